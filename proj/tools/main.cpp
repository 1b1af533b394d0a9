#include "traincap/cli.hpp"

int main(int argc, char** argv) { return traincap::run_cli(argc, argv); }
