#include "lownoise/cli/commands.hpp"

int main(int argc, char** argv) { return lownoise::cli::run_cli(argc, argv); }
