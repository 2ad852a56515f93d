#pragma once

#include <cstdint>
#include <string>

#include "homolign/camera.hpp"
#include "homolign/io.hpp"
#include "homolign/optimizer.hpp"
#include "homolign/procedural.hpp"
#include "homolign/transition.hpp"

namespace homolign {

// Experiment configuration: a flat key-value document with defaults.
// Unknown keys are rejected; command-line flags override file values.
struct run_config {
    // scoring
    int stride = 1;
    double eps_area = 1e-8;
    double eps_det = 1e-12;
    double eps_sum = 1e-12;
    double min_valid_fraction = 0.5;
    double sentinel = 1e6;
    // similarity threshold
    std::string tau_policy = "percentile";  // percentile | fixed
    double tau_percentile = 0.9;
    double tau_fixed = 1.0;
    // learning
    double alpha = 0.1;
    double beta = 1.0;
    double opt_tol = 1e-8;
    int opt_max_iter = 0;  // 0 = 10 * (n-1)^2
    // synthesis
    std::uint64_t seed = 1;
    std::string camera = "perspective";  // affine | perspective
    int cameras = 17;
    int train_cameras = 12;
    int frames = 32;
    double fps = 16.0;
    double radius_lo = 4.0;
    double radius_hi = 7.0;
    double elev_lo_deg = 10.0;
    double elev_hi_deg = 40.0;
    double subject_a_scale = 0.93;
    double subject_a_cadence = 0.99;
    double subject_a_style = 0.0;
    double subject_b_scale = 1.06;
    double subject_b_cadence = 1.02;
    double subject_b_style = 0.8;

    void apply(const std::string& key, const std::string& value) {
        const std::string w = "config key '" + key + "'";
        if (key == "stride") stride = static_cast<int>(parse_long(value, w));
        else if (key == "eps_area") eps_area = parse_double(value, w);
        else if (key == "eps_det") eps_det = parse_double(value, w);
        else if (key == "eps_sum") eps_sum = parse_double(value, w);
        else if (key == "min_valid_fraction") min_valid_fraction = parse_double(value, w);
        else if (key == "sentinel") sentinel = parse_double(value, w);
        else if (key == "tau_policy") tau_policy = value;
        else if (key == "tau_percentile") tau_percentile = parse_double(value, w);
        else if (key == "tau_fixed") tau_fixed = parse_double(value, w);
        else if (key == "alpha") alpha = parse_double(value, w);
        else if (key == "beta") beta = parse_double(value, w);
        else if (key == "opt_tol") opt_tol = parse_double(value, w);
        else if (key == "opt_max_iter") opt_max_iter = static_cast<int>(parse_long(value, w));
        else if (key == "seed") seed = static_cast<std::uint64_t>(parse_long(value, w));
        else if (key == "camera") camera = value;
        else if (key == "cameras") cameras = static_cast<int>(parse_long(value, w));
        else if (key == "train_cameras") train_cameras = static_cast<int>(parse_long(value, w));
        else if (key == "frames") frames = static_cast<int>(parse_long(value, w));
        else if (key == "fps") fps = parse_double(value, w);
        else if (key == "radius_lo") radius_lo = parse_double(value, w);
        else if (key == "radius_hi") radius_hi = parse_double(value, w);
        else if (key == "elev_lo_deg") elev_lo_deg = parse_double(value, w);
        else if (key == "elev_hi_deg") elev_hi_deg = parse_double(value, w);
        else if (key == "subject_a_scale") subject_a_scale = parse_double(value, w);
        else if (key == "subject_a_cadence") subject_a_cadence = parse_double(value, w);
        else if (key == "subject_a_style") subject_a_style = parse_double(value, w);
        else if (key == "subject_b_scale") subject_b_scale = parse_double(value, w);
        else if (key == "subject_b_cadence") subject_b_cadence = parse_double(value, w);
        else if (key == "subject_b_style") subject_b_style = parse_double(value, w);
        else throw parse_error("unknown config key '" + key + "'");
    }

    void validate() const {
        auto fail = [](const std::string& m) { throw validation_error("config: " + m); };
        if (stride < 1) fail("stride must be >= 1");
        if (!(eps_area >= 0.0 && eps_det >= 0.0 && eps_sum >= 0.0))
            fail("epsilon guards must be non-negative");
        if (!(min_valid_fraction >= 0.0 && min_valid_fraction <= 1.0))
            fail("min_valid_fraction must lie in [0,1]");
        if (!(sentinel > 0.0)) fail("sentinel must be positive");
        if (tau_policy != "percentile" && tau_policy != "fixed")
            fail("tau_policy must be 'percentile' or 'fixed'");
        if (!(tau_percentile > 0.0 && tau_percentile <= 1.0))
            fail("tau_percentile must lie in (0,1]");
        if (!(tau_fixed > 0.0)) fail("tau_fixed must be positive");
        if (!(beta >= 0.0)) fail("beta must be non-negative");
        if (!(opt_tol > 0.0)) fail("opt_tol must be positive");
        if (opt_max_iter < 0) fail("opt_max_iter must be >= 0");
        if (camera != "affine" && camera != "perspective")
            fail("camera must be 'affine' or 'perspective'");
        if (cameras < 1) fail("cameras must be >= 1");
        if (train_cameras < 1 || train_cameras >= cameras)
            fail("train_cameras must satisfy 1 <= train_cameras < cameras");
        if (frames < 8) fail("frames must be >= 8");
        if (!(fps > 0.0)) fail("fps must be positive");
        if (!(radius_lo >= 1.0)) fail("radius_lo must be >= 1 (camera outside subject)");
        if (!(radius_hi >= radius_lo)) fail("radius_hi must be >= radius_lo");
        if (!(elev_lo_deg >= -90.0 && elev_hi_deg <= 90.0 && elev_lo_deg <= elev_hi_deg))
            fail("elevation range must satisfy -90 <= lo <= hi <= 90");
        for (double s : {subject_a_scale, subject_b_scale})
            if (!(s > 0.0)) fail("subject scales must be positive");
        for (double c : {subject_a_cadence, subject_b_cadence})
            if (!(c > 0.0)) fail("subject cadences must be positive");
        for (double s : {subject_a_style, subject_b_style})
            if (!(s >= 0.0 && s <= 1.0)) fail("subject styles must lie in [0,1]");
    }

    static run_config from_kv(const kv_doc& doc) {
        run_config c;
        for (const auto& [k, v] : doc.items) c.apply(k, v);
        c.validate();
        return c;
    }

    static run_config from_file(const std::filesystem::path& path) {
        return from_kv(parse_kv(read_file(path), path.filename().string()));
    }

    // Full echo in a fixed order; manifests embed this.
    kv_doc to_kv() const {
        kv_doc d;
        d.add("stride", std::to_string(stride));
        d.add("eps_area", fmt(eps_area));
        d.add("eps_det", fmt(eps_det));
        d.add("eps_sum", fmt(eps_sum));
        d.add("min_valid_fraction", fmt(min_valid_fraction));
        d.add("sentinel", fmt(sentinel));
        d.add("tau_policy", tau_policy);
        d.add("tau_percentile", fmt(tau_percentile));
        d.add("tau_fixed", fmt(tau_fixed));
        d.add("alpha", fmt(alpha));
        d.add("beta", fmt(beta));
        d.add("opt_tol", fmt(opt_tol));
        d.add("opt_max_iter", std::to_string(opt_max_iter));
        d.add("seed", std::to_string(seed));
        d.add("camera", camera);
        d.add("cameras", std::to_string(cameras));
        d.add("train_cameras", std::to_string(train_cameras));
        d.add("frames", std::to_string(frames));
        d.add("fps", fmt(fps));
        d.add("radius_lo", fmt(radius_lo));
        d.add("radius_hi", fmt(radius_hi));
        d.add("elev_lo_deg", fmt(elev_lo_deg));
        d.add("elev_hi_deg", fmt(elev_hi_deg));
        d.add("subject_a_scale", fmt(subject_a_scale));
        d.add("subject_a_cadence", fmt(subject_a_cadence));
        d.add("subject_a_style", fmt(subject_a_style));
        d.add("subject_b_scale", fmt(subject_b_scale));
        d.add("subject_b_cadence", fmt(subject_b_cadence));
        d.add("subject_b_style", fmt(subject_b_style));
        return d;
    }

    transition_options transition_opts() const {
        transition_options o;
        o.guards.eps_area = eps_area;
        o.guards.eps_det = eps_det;
        o.guards.eps_sum = eps_sum;
        o.min_valid_fraction = min_valid_fraction;
        o.sentinel = sentinel;
        o.stride = stride;
        return o;
    }

    optimize_options optimizer_opts() const {
        optimize_options o;
        o.tol = opt_tol;
        o.max_iter = opt_max_iter;
        return o;
    }

    camera_kind camera_model_kind() const { return camera_kind_from(camera); }

    subject_params subject_a() const {
        return {subject_a_scale, subject_a_cadence, subject_a_style};
    }
    subject_params subject_b() const {
        return {subject_b_scale, subject_b_cadence, subject_b_style};
    }
};

}  // namespace homolign
