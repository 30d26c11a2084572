#include "cli.hpp"

int main(int argc, char** argv) { return infogeo::cli::run(argc, argv); }
