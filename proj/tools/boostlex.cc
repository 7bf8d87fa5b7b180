#include "boostlex/cli/commands.h"

int main(int argc, char** argv) { return boostlex::cli::run(argc, argv); }
