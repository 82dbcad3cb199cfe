#include <string>
#include <vector>

#include "specgrowth/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return specgrowth::cli::run(args);
}
