#include "cfs/cli.hpp"

int main(int argc, char** argv) { return cfs::run_cli(argc, argv); }
