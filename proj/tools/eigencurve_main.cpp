#include "eigencurve/cli.hpp"

int main(int argc, char** argv) { return eigencurve::run_cli(argc, argv); }
