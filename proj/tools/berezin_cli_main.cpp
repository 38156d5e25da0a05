#include <berezin/cli.hpp>

#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const berezin::ExperimentConfig config = berezin::parse_args(args);
        return berezin::run(config);
    } catch (const berezin::HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const berezin::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return berezin::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "constraint error: " << e.what() << "\n";
        return berezin::kExitConstraint;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return berezin::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return berezin::kExitNumerical;
    }
}
