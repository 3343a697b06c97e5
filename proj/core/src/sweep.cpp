#include "polaron/sweep.hpp"

#include <cstdlib>
#include <string>

namespace polaron {

int worker_count() {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* cap = std::getenv("POLARON_THREADS")) {
        try {
            const int requested = std::stoi(cap);
            if (requested >= 1) workers = std::min(workers, requested);
        } catch (...) {
            // unparsable cap: keep the hardware default
        }
    }
    return workers;
}

}  // namespace polaron
