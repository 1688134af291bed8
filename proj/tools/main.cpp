#include "blotto/cli.hpp"

int main(int argc, char** argv) { return blotto::run_cli(argc, argv); }
