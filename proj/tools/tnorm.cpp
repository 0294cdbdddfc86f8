#include "tnorm/cli.hpp"

int main(int argc, char** argv) { return tnorm::cli_main(argc, argv); }
