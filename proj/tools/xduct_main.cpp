#include "xduct/cli.hpp"

int main(int argc, char** argv) { return xduct::cli::run(argc, argv); }
