#include "ekr_cli.hpp"

int main(int argc, char** argv) { return ekr::cli::run_cli(argc, argv); }
