#include "thzsec/cli.hpp"

int main(int argc, char** argv) { return thzsec::cli::run(argc, argv); }
