#include "commands.h"

int main(int argc, char** argv) { return probclone::cli::run(argc, argv); }
