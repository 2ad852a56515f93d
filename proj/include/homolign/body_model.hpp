#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "homolign/errors.hpp"

namespace homolign {

// Ordered list of tracked joint labels.  Joint order is part of every file
// format and of the weight parametrization, so it is fixed at construction.
struct body_model {
    std::vector<std::string> joints;

    std::size_t size() const { return joints.size(); }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < joints.size(); ++i)
            if (joints[i] == label) return static_cast<int>(i);
        return -1;
    }

    void validate() const {
        if (joints.size() < 4)
            throw validation_error("body model needs at least 4 joints, got " +
                                   std::to_string(joints.size()));
        std::unordered_set<std::string> seen;
        for (const auto& j : joints) {
            if (j.empty())
                throw validation_error("body model contains an empty joint label");
            if (!seen.insert(j).second)
                throw validation_error("duplicate joint label: " + j);
        }
    }

    // Default 11-point model: head, shoulders, elbows, hands, knees, feet.
    static body_model default11() {
        return body_model{{
            "head",
            "l_shoulder", "r_shoulder",
            "l_elbow", "r_elbow",
            "l_hand", "r_hand",
            "l_knee", "r_knee",
            "l_foot", "r_foot",
        }};
    }
};

}  // namespace homolign
