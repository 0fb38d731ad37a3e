#include "wavelab/cli.hpp"

int main(int argc, char** argv) { return wavelab::run_command_line(argc, argv); }
