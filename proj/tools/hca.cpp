#include "hca/runner.hpp"

int main(int argc, char** argv) { return hca::run_cli(argc, argv); }
