#include "fqgate/cli.hpp"

int main(int argc, char** argv) { return fqgate::run_cli(argc, argv); }
