#include "cli.hpp"

int main(int argc, char** argv) { return caterlab::cli::run(argc, argv); }
