#include "cli.hpp"

int main(int argc, char** argv) { return phaseflow::cli::run_command(argc, argv); }
