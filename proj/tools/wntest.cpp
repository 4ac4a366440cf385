#include "wnrank/cli.hpp"

int main(int argc, char** argv) { return wnrank::run_cli(argc, argv); }
