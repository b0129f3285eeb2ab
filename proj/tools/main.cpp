#include "twopart/cli.hpp"

int main(int argc, char** argv) { return twopart::cli::run(argc, argv); }
