#include "shiftforge/cli.hpp"

int main(int argc, char** argv) { return shiftforge::run(argc, argv); }
