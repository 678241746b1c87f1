#include "evoc/cli.hpp"

int main(int argc, char** argv) { return evoc::run_cli(argc, argv); }
