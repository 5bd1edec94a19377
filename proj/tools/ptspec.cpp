#include "ptspec/cli.hpp"

int main(int argc, char** argv) { return ptspec::cli::main(argc, argv); }
