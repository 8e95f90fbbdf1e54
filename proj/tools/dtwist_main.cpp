#include "dtwist/cli.hpp"

int main(int argc, char** argv) { return dtwist::cli::run_main(argc, argv); }
