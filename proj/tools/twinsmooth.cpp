#include "twinsmooth/cli/driver.hpp"

int main(int argc, char** argv) { return twinsmooth::cli::run_cli(argc, argv); }
