#include <vector>

#include "dayahead/cli.hpp"

int main(int argc, char** argv) {
    return dayahead::run_command(std::vector<std::string>(argv, argv + argc));
}
