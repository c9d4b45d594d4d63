// dickesim - scenario runner for the collective-spin / two-mode-field simulator
#include "dicke/io.hpp"

int main(int argc, char** argv) { return dicke::io::run_cli(argc, argv); }
