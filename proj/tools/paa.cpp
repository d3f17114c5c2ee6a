#include "cli/dispatch.hpp"

int main(int argc, char** argv) { return paa::cli::dispatch(argc, argv); }
