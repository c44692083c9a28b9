#include "gksvm/harness.hpp"

int main(int argc, char** argv) { return gksvm::cli_dispatch(argc, argv); }
