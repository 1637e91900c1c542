#include "bjortho/cli.hpp"

int main(int argc, char** argv) { return bjortho::cli_main(argc, argv); }
