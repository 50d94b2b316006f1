#include "l0bb/cli.hpp"

int main(int argc, char** argv) { return l0bb::run_cli(argc, argv); }
