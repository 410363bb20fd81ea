#include "amalgam/cli.hpp"

int main(int argc, char** argv) { return amalgam::cli::run(argc, argv); }
