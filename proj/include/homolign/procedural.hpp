#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "homolign/body_model.hpp"
#include "homolign/errors.hpp"
#include "homolign/rng.hpp"
#include "homolign/sequence.hpp"

namespace homolign {

enum class action_kind { walk_like, run_like, jump_like, swing_like, climb_like };

inline const std::vector<action_kind>& all_actions() {
    static const std::vector<action_kind> v = {
        action_kind::walk_like, action_kind::run_like, action_kind::jump_like,
        action_kind::swing_like, action_kind::climb_like};
    return v;
}

inline std::string to_string(action_kind k) {
    switch (k) {
        case action_kind::walk_like: return "walk-like";
        case action_kind::run_like: return "run-like";
        case action_kind::jump_like: return "jump-like";
        case action_kind::swing_like: return "swing-like";
        case action_kind::climb_like: return "climb-like";
    }
    throw validation_error("bad action kind");
}

inline action_kind action_kind_from(const std::string& s) {
    for (action_kind k : all_actions())
        if (to_string(k) == s) return k;
    throw parse_error("unknown action kind: " + s);
}

// Inter-subject variation: global limb scale, cadence multiplier, and a
// style factor in [0,1] steering the mannerism axis of each action (arm
// carriage for the gait actions, stroke compactness for the swing).
struct subject_params {
    double scale = 1.0;
    double cadence = 1.0;
    double style = 0.0;
};

namespace detail {

inline double smooth01(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

}  // namespace detail

// Procedural articulated 11-joint actions.  Sinusoid/spline kinematics in
// a world frame with x forward and z up; the five kinds differ chiefly in
// leg trajectories, while per-subject style perturbs the non-canonical
// limbs.  Deterministic per (kind, params, frames, fps, seed).
inline joint_sequence3d procedural_action(action_kind kind,
                                          const subject_params& sp, int frames,
                                          double fps, std::uint64_t seed) {
    if (frames < 8) throw validation_error("procedural actions need frames >= 8");
    if (!(fps > 0.0)) throw validation_error("fps must be positive");

    const double L = sp.scale;
    const double thigh = 0.45 * L, shin = 0.43 * L;
    const double uarm = 0.30 * L, farm = 0.28 * L;
    const double hip_w = 0.17 * L, sho_w = 0.20 * L;
    const double torso = 0.55 * L, head_h = 0.22 * L;
    const double leg_z = thigh + shin;
    const double style = sp.style;
    const double cf = sp.cadence;
    const double ph = 6.283185307179586476925286766559;

    det_rng rng(seed);
    double jp[8], ja[8];
    for (double& v : jp) v = rng.uniform(-0.2, 0.2);
    for (double& v : ja) v = rng.uniform(0.95, 1.05);

    joint_sequence3d out;
    out.model = body_model::default11();
    out.action = to_string(kind);
    out.fps = fps;
    out.poses.reserve(frames);

    const double t_last = static_cast<double>(frames - 1) / fps;
    for (int fi = 0; fi < frames; ++fi) {
        double t = static_cast<double>(fi) / fps;
        vec3 pelvis;
        double thL, thR, bendL, bendR, phiL, phiR, ebend, lean;
        switch (kind) {
            case action_kind::walk_like: {
                double f = 1.5 * cf;
                pelvis = {1.15 * t, 0.015 * std::sin(ph * f * t + jp[0]),
                          leg_z * 0.96 + 0.025 * std::cos(2.0 * ph * f * t)};
                double legA = 0.50 * ja[0];
                thL = legA * std::sin(ph * f * t + jp[1]);
                thR = legA * std::sin(ph * f * t + 3.141592653589793 + jp[1]);
                bendL = 0.25 + 0.45 * (0.5 + 0.5 * std::cos(ph * f * t + jp[2]));
                bendR = 0.25 + 0.45 * (0.5 + 0.5 * std::cos(ph * f * t + 3.141592653589793 + jp[2]));
                double armA = (0.22 - 0.18 * style) * ja[1];
                phiL = armA * std::sin(ph * f * t + 3.141592653589793 + jp[3]) + 0.1 * style;
                phiR = armA * std::sin(ph * f * t + jp[3]) + 0.1 * style;
                ebend = 0.35 + 0.35 * style + 0.06 * std::sin(ph * f * t + jp[4]);
                lean = 0.05;
                break;
            }
            case action_kind::run_like: {
                double f = 2.5 * cf;
                pelvis = {2.6 * t, 0.02 * std::sin(ph * f * t + jp[0]),
                          leg_z * 0.93 + 0.06 * std::cos(2.0 * ph * f * t)};
                double legA = 0.85 * ja[0];
                thL = legA * std::sin(ph * f * t + jp[1]);
                thR = legA * std::sin(ph * f * t + 3.141592653589793 + jp[1]);
                bendL = 0.5 + 0.9 * (0.5 + 0.5 * std::cos(ph * f * t + jp[2]));
                bendR = 0.5 + 0.9 * (0.5 + 0.5 * std::cos(ph * f * t + 3.141592653589793 + jp[2]));
                double armA = (0.2 - 0.16 * style) * ja[1];
                phiL = armA * std::sin(ph * f * t + 3.141592653589793 + jp[3]);
                phiR = armA * std::sin(ph * f * t + jp[3]);
                ebend = 1.1 - 0.5 * style + 0.08 * std::sin(ph * f * t + jp[4]);
                lean = 0.16;
                break;
            }
            case action_kind::jump_like: {
                double f = 0.9 * cf;
                double crouch = 0.22 * (0.5 - 0.5 * std::cos(ph * f * t + jp[0]));
                pelvis = {0.05 * t, 0.0,
                          leg_z * 0.97 - crouch +
                              0.16 * std::max(0.0, std::sin(ph * f * t + jp[0]))};
                double squat = 0.9 * (crouch / 0.22);
                thL = 0.35 * squat + 0.03 * std::sin(ph * 0.31 * t + jp[1]);
                thR = 0.35 * squat + 0.03 * std::sin(ph * 0.31 * t + jp[5]);
                bendL = 0.25 + 1.1 * squat;
                bendR = 0.25 + 1.1 * squat;
                double armA = (0.3 - 0.24 * style) * ja[1];
                phiL = -0.2 + armA * (crouch / 0.22) +
                       0.02 * std::sin(ph * 0.41 * t + jp[3]);
                phiR = -0.2 + armA * (crouch / 0.22) +
                       0.02 * std::sin(ph * 0.43 * t + jp[6]);
                ebend = 0.3 + 0.35 * style + 0.12 * squat;
                lean = 0.10 * squat;
                break;
            }
            case action_kind::swing_like: {
                double u01 = std::clamp(1.2 * t / t_last - 0.1, 0.0, 1.0);
                double sweep = -0.9 + 2.0 * detail::smooth01(u01);
                double sway = 0.5 * std::sin(3.141592653589793 * u01);
                pelvis = {0.0, 0.05 * sway, leg_z * 0.93 - 0.015 * std::abs(sweep)};
                thL = 0.16 + 0.12 * sway * ja[0];
                thR = -0.16 + 0.12 * sway * ja[0];
                bendL = 0.45 + 0.12 * sway;
                bendR = 0.45 - 0.12 * sway;
                phiL = (0.75 - 0.35 * style) * sweep * ja[1];
                phiR = (0.75 - 0.35 * style) * sweep * ja[1] + 0.2;
                ebend = 0.25 + 0.3 * style + 0.12 * std::abs(sweep);
                lean = 0.22;
                break;
            }
            case action_kind::climb_like: {
                double f = 1.0 * cf;
                pelvis = {0.02 * std::sin(ph * f * t + jp[0]),
                          0.015 * std::sin(ph * f * t + jp[5]),
                          leg_z * 0.92 + 0.45 * t};
                double legA = 0.62 * ja[0];
                thL = 0.45 + legA * std::sin(ph * f * t + jp[1]);
                thR = 0.45 + legA * std::sin(ph * f * t + 3.141592653589793 + jp[1]);
                bendL = 0.9 + 0.5 * std::cos(ph * f * t + jp[2]);
                bendR = 0.9 + 0.5 * std::cos(ph * f * t + 3.141592653589793 + jp[2]);
                double reach = 0.8 - 0.25 * style;
                phiL = -reach + (0.3 - 0.2 * style) *
                                    std::sin(ph * f * t + 3.141592653589793 + jp[3]);
                phiR = -reach + (0.3 - 0.2 * style) * std::sin(ph * f * t + jp[3]);
                ebend = -0.2 + 0.35 * style + 0.1 * std::sin(ph * f * t + jp[4]);
                lean = 0.12;
                break;
            }
            default:
                throw validation_error("bad action kind");
        }

        // torso and head from the pelvis with forward lean
        vec3 chest = pelvis + vec3{std::sin(lean) * torso, 0.0, std::cos(lean) * torso};
        vec3 l_sh = chest + vec3{0.0, +sho_w, 0.0};
        vec3 r_sh = chest + vec3{0.0, -sho_w, 0.0};
        vec3 head = chest + vec3{0.04, 0.0, head_h};
        vec3 l_hip = pelvis + vec3{0.0, +hip_w, 0.0};
        vec3 r_hip = pelvis + vec3{0.0, -hip_w, 0.0};

        // two-segment limb in the sagittal plane, angles from straight down
        auto limb = [](const vec3& origin, double ang1, double len1, double ang2,
                       double len2, vec3& mid, vec3& tip) {
            mid = origin + vec3{len1 * std::sin(ang1), 0.0, -len1 * std::cos(ang1)};
            tip = mid + vec3{len2 * std::sin(ang2), 0.0, -len2 * std::cos(ang2)};
        };
        vec3 l_kn, l_ft, r_kn, r_ft, l_el, l_ha, r_el, r_ha;
        limb(l_hip, thL, thigh, thL - bendL, shin, l_kn, l_ft);
        limb(r_hip, thR, thigh, thR - bendR, shin, r_kn, r_ft);
        limb(l_sh, phiL, uarm, phiL + ebend, farm, l_el, l_ha);
        limb(r_sh, phiR, uarm, phiR + ebend, farm, r_el, r_ha);

        pose3d p(11);
        p.p[0] = head;
        p.p[1] = l_sh;
        p.p[2] = r_sh;
        p.p[3] = l_el;
        p.p[4] = r_el;
        p.p[5] = l_ha;
        p.p[6] = r_ha;
        p.p[7] = l_kn;
        p.p[8] = r_kn;
        p.p[9] = l_ft;
        p.p[10] = r_ft;
        out.poses.push_back(std::move(p));
    }
    return out;
}

// Centroid and twice the max radius of all joints over all frames; used to
// place cameras relative to the subject.
inline void sequence_bounds(const joint_sequence3d& seq, vec3& center,
                            double& extent) {
    double sx = 0.0, sy = 0.0, sz = 0.0;
    std::size_t cnt = 0;
    for (const auto& f : seq.poses)
        for (const auto& p : f.p) {
            sx += p.x;
            sy += p.y;
            sz += p.z;
            ++cnt;
        }
    center = {sx / cnt, sy / cnt, sz / cnt};
    double r = 0.0;
    for (const auto& f : seq.poses)
        for (const auto& p : f.p) r = std::max(r, norm(p - center));
    extent = 2.0 * r;
}

}  // namespace homolign
