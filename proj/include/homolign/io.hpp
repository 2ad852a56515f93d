#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "homolign/errors.hpp"
#include "homolign/sequence.hpp"

namespace homolign {

// Shortest round-trip decimal form; the only double formatter used for
// files, so outputs are byte-stable.
inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw parse_error("cannot parse number '" + std::string(s) + "' in " + what);
    return v;
}

inline long parse_long(std::string_view s, const std::string& what) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw parse_error("cannot parse integer '" + std::string(s) + "' in " + what);
    return v;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failed on " + path.string());
    return ss.str();
}

// All writers go through here: write a temp file, then rename into place,
// so partially written outputs are never observed.
inline void write_atomic(const std::filesystem::path& path,
                         const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw io_error("write failed on " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("rename to " + path.string() + " failed: " + ec.message());
}

// FNV-1a, for cheap reproducibility digests of output files.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ----- key-value documents ("key = value" per line, '#' comments) ---------

struct kv_doc {
    std::vector<std::pair<std::string, std::string>> items;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return &v;
        return nullptr;
    }

    const std::string& require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw parse_error("missing key '" + key + "'");
        return *v;
    }

    void add(const std::string& k, const std::string& v) {
        items.emplace_back(k, v);
    }

    std::string to_text() const {
        std::string out;
        for (const auto& [k, v] : items) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        return out;
    }
};

inline std::string trimmed(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline kv_doc parse_kv(const std::string& text, const std::string& what) {
    kv_doc out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error(what + " line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trimmed(std::string_view(t).substr(0, eq));
        std::string val = trimmed(std::string_view(t).substr(eq + 1));
        if (key.empty())
            throw parse_error(what + " line " + std::to_string(lineno) +
                              ": empty key");
        out.add(key, val);
    }
    return out;
}

// ----- sequence files ------------------------------------------------------
//
// One header row, then one record per frame:
//
//   homolign-sequence v1 dims=2 joints=head,l_shoulder,... [action=..]
//       [subject=..] [camera=..] [fps=..]
//   <frame> <label> <x> <y> <valid> <label> <x> <y> <valid> ...
//
// dims=3 records carry <x> <y> <z> <valid>.  Invalid joints store nan
// coordinates.  Lenient loading: a coordinate that fails to parse (or a
// record that ends before all joints appear) marks the affected joints
// invalid instead of failing the file.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

inline std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::size_t b = 0;
    while (true) {
        std::size_t e = s.find(',', b);
        if (e == std::string_view::npos) {
            out.emplace_back(s.substr(b));
            break;
        }
        out.emplace_back(s.substr(b, e - b));
        b = e + 1;
    }
    return out;
}

struct seq_header {
    int dims = 0;
    std::vector<std::string> joints;
    std::string action, subject, camera;
    double fps = 0.0;
};

inline seq_header parse_seq_header(std::string_view line,
                                   const std::string& what) {
    auto tok = split_ws(line);
    if (tok.size() < 2 || tok[0] != "homolign-sequence" || tok[1] != "v1")
        throw parse_error(what + ": not a homolign-sequence v1 file");
    seq_header h;
    for (std::size_t i = 2; i < tok.size(); ++i) {
        std::string_view t = tok[i];
        std::size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw parse_error(what + ": bad header field '" + std::string(t) + "'");
        std::string_view key = t.substr(0, eq);
        std::string_view val = t.substr(eq + 1);
        if (key == "dims")
            h.dims = static_cast<int>(parse_long(val, what + " header dims"));
        else if (key == "joints")
            h.joints = split_commas(val);
        else if (key == "action")
            h.action = std::string(val);
        else if (key == "subject")
            h.subject = std::string(val);
        else if (key == "camera")
            h.camera = std::string(val);
        else if (key == "fps")
            h.fps = parse_double(val, what + " header fps");
        else
            throw parse_error(what + ": unknown header field '" +
                              std::string(key) + "'");
    }
    if (h.dims != 2 && h.dims != 3)
        throw schema_mismatch(what + ": dims must be 2 or 3");
    if (h.joints.size() < 4)
        throw schema_mismatch(what + ": header declares fewer than 4 joints");
    return h;
}

inline std::string seq_header_text(int dims, const body_model& model,
                                   const std::string& action,
                                   const std::string& subject,
                                   const std::string& camera, double fps) {
    std::string out = "homolign-sequence v1 dims=" + std::to_string(dims);
    out += " joints=";
    for (std::size_t i = 0; i < model.joints.size(); ++i) {
        if (i) out += ',';
        out += model.joints[i];
    }
    if (!action.empty()) out += " action=" + action;
    if (!subject.empty()) out += " subject=" + subject;
    if (!camera.empty()) out += " camera=" + camera;
    if (fps > 0.0) out += " fps=" + fmt(fps);
    out += '\n';
    return out;
}

}  // namespace detail

inline void save_sequence(const joint_sequence& seq,
                          const std::filesystem::path& path) {
    seq.validate();
    std::string out = detail::seq_header_text(2, seq.model, seq.action,
                                              seq.subject, seq.camera, seq.fps);
    for (std::size_t f = 0; f < seq.poses.size(); ++f) {
        const pose2d& p = seq.poses[f];
        out += std::to_string(f);
        for (std::size_t j = 0; j < seq.model.size(); ++j) {
            out += ' ';
            out += seq.model.joints[j];
            if (p.valid[j]) {
                out += ' ';
                out += fmt(p.p[j].x);
                out += ' ';
                out += fmt(p.p[j].y);
                out += " 1";
            } else {
                out += " nan nan 0";
            }
        }
        out += '\n';
    }
    write_atomic(path, out);
}

inline void save_sequence3d(const joint_sequence3d& seq,
                            const std::filesystem::path& path) {
    std::string out = detail::seq_header_text(3, seq.model, seq.action,
                                              seq.subject, "", seq.fps);
    for (std::size_t f = 0; f < seq.poses.size(); ++f) {
        const pose3d& p = seq.poses[f];
        out += std::to_string(f);
        for (std::size_t j = 0; j < seq.model.size(); ++j) {
            out += ' ';
            out += seq.model.joints[j];
            out += ' ';
            out += fmt(p.p[j].x);
            out += ' ';
            out += fmt(p.p[j].y);
            out += ' ';
            out += fmt(p.p[j].z);
            out += " 1";
        }
        out += '\n';
    }
    write_atomic(path, out);
}

// Load a 2D sequence.  When `expect` is given, the header's joint list
// must match it exactly (schema check); otherwise the file's own list is
// adopted.
inline joint_sequence load_sequence(const std::filesystem::path& path,
                                    const body_model* expect = nullptr) {
    std::string text = read_file(path);
    const std::string what = path.filename().string();
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw parse_error(what + ": empty file");
    detail::seq_header h = detail::parse_seq_header(line, what);
    if (h.dims != 2)
        throw schema_mismatch(what + ": expected a 2D sequence, file has dims=" +
                              std::to_string(h.dims));
    if (expect && h.joints != expect->joints)
        throw schema_mismatch(what + ": joint list does not match the configured body model");

    joint_sequence seq;
    seq.model.joints = h.joints;
    seq.model.validate();
    seq.action = h.action;
    seq.subject = h.subject;
    seq.camera = h.camera;
    seq.fps = h.fps;

    std::size_t n = seq.model.size();
    int lineno = 1;
    long frame_idx = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::split_ws(line);
        if (tok.empty()) continue;
        const std::string ctx = what + " line " + std::to_string(lineno);
        if (parse_long(tok[0], ctx + " frame index") != frame_idx)
            throw parse_error(ctx + ": frame index out of order");
        ++frame_idx;
        pose2d p(n);
        // per-joint groups: label x y valid; a short record leaves the
        // remaining joints invalid (lenient mode)
        std::size_t pos = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (pos >= tok.size()) {
                p.valid[j] = 0;
                continue;
            }
            if (pos + 4 > tok.size())
                throw parse_error(ctx + ": truncated joint group for '" +
                                  seq.model.joints[j] + "'");
            if (tok[pos] != seq.model.joints[j])
                throw schema_mismatch(ctx + ": expected joint '" +
                                      seq.model.joints[j] + "', found '" +
                                      std::string(tok[pos]) + "'");
            double x = 0.0, y = 0.0;
            bool ok = true;
            auto try_num = [&](std::string_view s, double& outv) {
                auto res = std::from_chars(s.data(), s.data() + s.size(), outv);
                if (res.ec != std::errc() || res.ptr != s.data() + s.size())
                    ok = false;
                else if (std::isnan(outv))
                    ok = false;
            };
            try_num(tok[pos + 1], x);
            try_num(tok[pos + 2], y);
            long flag = parse_long(tok[pos + 3], ctx + " valid flag");
            if (flag != 0 && flag != 1)
                throw parse_error(ctx + ": valid flag must be 0 or 1");
            if (ok && flag == 1) {
                p.p[j] = {x, y};
            } else {
                p.valid[j] = 0;  // missing / nan coordinate: lenient
            }
            pos += 4;
        }
        if (pos < tok.size())
            throw parse_error(ctx + ": trailing tokens after the last joint");
        seq.poses.push_back(std::move(p));
    }
    seq.validate();
    return seq;
}

}  // namespace homolign
