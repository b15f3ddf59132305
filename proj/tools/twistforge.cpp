#include "twistforge/cli.hpp"

int main(int argc, char** argv) { return twistforge::cli::run_main(argc, argv); }
