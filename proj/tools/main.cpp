#include "walshtf/cli.hpp"

int main(int argc, char** argv) { return walshtf::cli::run(argc, argv); }
