#include "cli.hpp"

int main(int argc, char** argv) { return qcpl::cli::main_impl(argc, argv); }
