#include "eqaff/cli.hpp"

int main(int argc, char** argv) { return eqaff::cli::run(argc, argv); }
