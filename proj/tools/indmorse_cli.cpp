#include "indmorse/cli/commands.hpp"

int main(int argc, char** argv) { return indmorse::cli::run(argc, argv); }
