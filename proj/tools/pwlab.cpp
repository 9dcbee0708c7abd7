#include "pwlab/cli.hpp"

int main(int argc, char** argv) { return pwlab::cli::run(argc, argv); }
