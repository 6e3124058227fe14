#include "galign/cli.hpp"

int main(int argc, char** argv) {
    return galign::cli(argc, argv);
}
