#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "homolign/body_model.hpp"
#include "homolign/errors.hpp"
#include "homolign/geometry.hpp"

namespace homolign {

// One tracked frame: per-joint image position plus a validity flag
// (occluded / behind-camera / unparsed joints are carried along as invalid).
struct pose2d {
    std::vector<vec2> p;
    std::vector<std::uint8_t> valid;

    explicit pose2d(std::size_t n = 0) : p(n), valid(n, 1) {}

    std::size_t size() const { return p.size(); }
};

struct pose3d {
    std::vector<vec3> p;

    explicit pose3d(std::size_t n = 0) : p(n) {}

    std::size_t size() const { return p.size(); }
};

// A tracked 2D joint sequence with its provenance labels.
struct joint_sequence {
    body_model model;
    std::vector<pose2d> poses;
    std::string action;
    std::string subject;
    std::string camera;
    double fps = 0.0;  // 0 = unknown

    std::size_t length() const { return poses.size(); }

    void validate() const {
        model.validate();
        if (poses.size() < 2)
            throw validation_error("sequence needs at least 2 frames, got " +
                                   std::to_string(poses.size()));
        for (const auto& f : poses)
            if (f.size() != model.size() || f.valid.size() != model.size())
                throw index_mismatch("frame joint count does not match body model");
    }
};

// 3D source sequence produced by the generators, before projection.
struct joint_sequence3d {
    body_model model;
    std::vector<pose3d> poses;
    std::string action;
    std::string subject;
    double fps = 0.0;
};

// Frame index pairs (t, t+stride) available in a sequence of the given
// length; these are the transitions scored against each other.
inline std::vector<std::pair<int, int>> transitions_of(std::size_t length,
                                                       int stride = 1) {
    if (stride < 1) throw validation_error("stride must be >= 1");
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t + stride < static_cast<int>(length); ++t)
        out.emplace_back(t, t + stride);
    return out;
}

}  // namespace homolign
