#include "qneat/cli.hpp"

int main(int argc, char** argv) { return qneat::cli::run(argc, argv); }
