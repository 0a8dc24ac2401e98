#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "mfs/io.hpp"

int main(int argc, char** argv) {
    if (argc >= 2 && (std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h")) {
        std::cout << mfs::usage_text();
        return 0;
    }
    try {
        mfs::RunConfig cfg = mfs::parse_config(argc, argv);
        return mfs::run_command(cfg);
    } catch (const mfs::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
