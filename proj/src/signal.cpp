#include "mbqc/signal.hpp"

namespace mbqc {

Signal Signal::operator^(const Signal& other) const {
    Signal out;
    out.constant = constant != other.constant;
    out.outcomes.reserve(outcomes.size() + other.outcomes.size());
    std::set_symmetric_difference(outcomes.begin(), outcomes.end(), other.outcomes.begin(),
                                  other.outcomes.end(), std::back_inserter(out.outcomes));
    return out;
}

bool Signal::evaluate(const std::map<QubitId, int>& recorded) const {
    bool v = constant;
    for (QubitId q : outcomes) {
        auto it = recorded.find(q);
        if (it == recorded.end())
            throw Error("signal reads outcome of unmeasured qubit " + std::to_string(q));
        v = v != (it->second != 0);
    }
    return v;
}

} // namespace mbqc
