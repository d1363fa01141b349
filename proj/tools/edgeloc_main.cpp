#include "edgeloc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return edgeloc::cli::run(std::move(args));
}
