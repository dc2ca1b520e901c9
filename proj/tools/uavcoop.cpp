#include "uavcoop/cli.hpp"

int main(int argc, char** argv) { return uavcoop::run_cli(argc, argv); }
