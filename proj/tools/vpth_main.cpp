#include "vpth/cli.hpp"

int main(int argc, char** argv) { return vpth::cli::run(argc, argv); }
