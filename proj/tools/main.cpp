#include "h10/io.hpp"

int main(int argc, char** argv) { return h10::io::run_cli(argc, argv); }
