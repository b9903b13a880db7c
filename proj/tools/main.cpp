#include "cli.hpp"

int main(int argc, char** argv) { return zsf::cli::run(argc, argv); }
