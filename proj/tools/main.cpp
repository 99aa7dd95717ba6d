#include "cli.hpp"

int main(int argc, char** argv) {
    return fbcs::run_cli(argc, argv);
}
