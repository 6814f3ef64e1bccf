#include "eihlab_cli/app.hpp"

int main(int argc, char** argv) { return eihlab::cli::run(argc, argv); }
