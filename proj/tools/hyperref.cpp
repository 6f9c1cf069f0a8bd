#include "hyperref/cli.hpp"

int main(int argc, char** argv) { return hyperref::cli::main(argc, argv); }
