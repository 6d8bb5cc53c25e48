#include "torusflux/commands.hpp"

int main(int argc, char** argv) {
    return torusflux::run_cli(argc, argv);
}
