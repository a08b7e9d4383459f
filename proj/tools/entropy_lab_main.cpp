#include "entlab/cli.hpp"

int main(int argc, char** argv) { return entlab::cli::run_cli(argc, argv); }
