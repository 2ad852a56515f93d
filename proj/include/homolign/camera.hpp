#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "homolign/errors.hpp"
#include "homolign/geometry.hpp"
#include "homolign/rng.hpp"
#include "homolign/sequence.hpp"

namespace homolign {

enum class camera_kind { affine, perspective };

inline std::string to_string(camera_kind k) {
    return k == camera_kind::affine ? "affine" : "perspective";
}

inline camera_kind camera_kind_from(const std::string& s) {
    if (s == "affine") return camera_kind::affine;
    if (s == "perspective") return camera_kind::perspective;
    throw parse_error("unknown camera kind: " + s);
}

struct camera_model {
    camera_kind kind = camera_kind::perspective;
    mat3 r = mat3::identity();  // world -> camera rotation
    vec3 t;                     // world -> camera translation
    double focal = 1.0;         // perspective only
    vec2 principal;             // perspective only
    std::uint64_t seed = 0;

    vec3 to_camera(const vec3& p) const {
        return {r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z + t.x,
                r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z + t.y,
                r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z + t.z};
    }

    void validate() const {
        // rows orthonormal to 1e-9
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                double dotv = r[i][0] * r[j][0] + r[i][1] * r[j][1] +
                              r[i][2] * r[j][2];
                double want = i == j ? 1.0 : 0.0;
                if (std::abs(dotv - want) > 1e-9)
                    throw validation_error("camera rotation is not orthonormal");
            }
        if (kind == camera_kind::perspective && !(focal > 0.0))
            throw validation_error("perspective camera needs focal > 0");
    }
};

// Rotation looking from eye toward target; camera z is the forward axis.
inline camera_model look_at(const vec3& eye, const vec3& target) {
    vec3 fwd = normalized(target - eye);
    vec3 up{0.0, 0.0, 1.0};
    vec3 right = cross(fwd, up);
    double rn = norm(right);
    if (rn < 1e-12) {
        // looking straight along the up axis; pick another reference
        up = {0.0, 1.0, 0.0};
        right = cross(fwd, up);
        rn = norm(right);
    }
    right = right * (1.0 / rn);
    vec3 down = cross(fwd, right);
    camera_model c;
    c.r[0] = {right.x, right.y, right.z};
    c.r[1] = {down.x, down.y, down.z};
    c.r[2] = {fwd.x, fwd.y, fwd.z};
    c.t = {-(c.r[0][0] * eye.x + c.r[0][1] * eye.y + c.r[0][2] * eye.z),
           -(c.r[1][0] * eye.x + c.r[1][1] * eye.y + c.r[1][2] * eye.z),
           -(c.r[2][0] * eye.x + c.r[2][1] * eye.y + c.r[2][2] * eye.z)};
    return c;
}

struct rig_options {
    vec3 center;              // subject centroid
    double extent = 1.0;      // subject bounding radius scale
    double radius_lo = 4.0;   // camera distance, in units of extent
    double radius_hi = 7.0;
    double elev_lo_deg = 10.0;
    double elev_hi_deg = 40.0;
    camera_kind kind = camera_kind::perspective;
};

// Random cameras on a sphere sector, all looking at the subject center.
// The perspective focal equals the camera distance (fixed-framing
// convention), so "focal >= k * extent" and "distance >= k * extent" are
// the same statement.
inline std::vector<camera_model> random_rig(int count, std::uint64_t seed,
                                            const rig_options& opt = {}) {
    if (count < 1) throw validation_error("rig needs count >= 1");
    det_rng rng(seed);
    std::vector<camera_model> out;
    out.reserve(count);
    const double deg = 0.017453292519943295;
    for (int i = 0; i < count; ++i) {
        double az = rng.uniform(0.0, 6.283185307179586);
        double el = rng.uniform(opt.elev_lo_deg * deg, opt.elev_hi_deg * deg);
        double dist = rng.uniform(opt.radius_lo, opt.radius_hi) * opt.extent;
        vec3 eye{opt.center.x + dist * std::cos(el) * std::cos(az),
                 opt.center.y + dist * std::cos(el) * std::sin(az),
                 opt.center.z + dist * std::sin(el)};
        camera_model c = look_at(eye, opt.center);
        c.kind = opt.kind;
        c.focal = dist;
        c.principal = {0.0, 0.0};
        c.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
        out.push_back(c);
    }
    return out;
}

// Project a 3D sequence.  Perspective joints at or behind the camera plane
// are marked invalid (the frame survives).
inline joint_sequence project(const joint_sequence3d& seq,
                              const camera_model& cam,
                              const std::string& camera_id = "") {
    cam.validate();
    joint_sequence out;
    out.model = seq.model;
    out.action = seq.action;
    out.subject = seq.subject;
    out.camera = camera_id;
    out.fps = seq.fps;
    out.poses.reserve(seq.poses.size());
    constexpr double eps_depth = 1e-9;
    for (const auto& frame : seq.poses) {
        pose2d p(frame.size());
        for (std::size_t j = 0; j < frame.size(); ++j) {
            vec3 q = cam.to_camera(frame.p[j]);
            if (cam.kind == camera_kind::affine) {
                p.p[j] = {q.x, q.y};
            } else if (q.z > eps_depth) {
                p.p[j] = {cam.principal.x + cam.focal * q.x / q.z,
                          cam.principal.y + cam.focal * q.y / q.z};
            } else {
                p.p[j] = {0.0, 0.0};
                p.valid[j] = 0;  // behind camera
            }
        }
        out.poses.push_back(std::move(p));
    }
    return out;
}

}  // namespace homolign
