#include "gwnk/sim/cli.hpp"

int main(int argc, char** argv) { return gwnk::sim::cli_main(argc, argv); }
