#include "invmet/cli.hpp"

int main(int argc, char** argv) { return invmet::cli::dispatch(argc, argv); }
