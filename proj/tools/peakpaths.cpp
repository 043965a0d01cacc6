#include "peakpaths/cli/app.hpp"

int main(int argc, char** argv) {
    return peakpaths::cli::run(argc, argv);
}
