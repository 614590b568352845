#include "gridiron/cli/dispatch.hpp"

int main(int argc, char** argv) { return gridiron::cli::dispatch(argc, argv); }
