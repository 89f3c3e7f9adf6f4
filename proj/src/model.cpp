#include "qisxml/model.hpp"

namespace qisxml {

std::size_t Circuit::operation_count() const noexcept {
    std::size_t n = 0;
    for (const auto& step : steps) {
        n += step.operations.size();
    }
    return n;
}

std::vector<const Execute*> Program::executes() const {
    std::vector<const Execute*> out;
    for (const auto& action : actions) {
        if (const auto* e = std::get_if<Execute>(&action)) {
            out.push_back(e);
        }
    }
    return out;
}

std::vector<const Measure*> Program::measures() const {
    std::vector<const Measure*> out;
    for (const auto& action : actions) {
        if (const auto* m = std::get_if<Measure>(&action)) {
            out.push_back(m);
        }
    }
    return out;
}

}  // namespace qisxml
