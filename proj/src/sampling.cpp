#include "perc/sampling.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

double critical_p(LatticeKind kind) {
    // Triangular site percolation is exactly self-dual at 1/2. The square-site
    // value is the pinned literature constant; it is recorded in run manifests
    // so datasets stay reinterpretable if a better value is adopted.
    return kind == LatticeKind::Triangular ? 0.5 : 0.59274605;
}

Configuration::Configuration(LatticeKind lattice, BoxRegion box, double p, TrialKey key)
    : lattice_(lattice), box_(box), p_(p), key_(key) {
    if (box.radius < 0) throw std::invalid_argument("sample: empty box");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample: p outside [0,1]");
    const size_t n = size_t(box.site_count());
    states_.resize(n);
    const uint64_t stream = trial_stream_key(key);
    const uint64_t threshold = open_threshold(p);
    for (size_t i = 0; i < n; ++i)
        states_[i] = site_uniform53(stream, i) < threshold ? 1 : 0;
}

Configuration::Configuration(LatticeKind lattice, BoxRegion box, double p, TrialKey key,
                             std::vector<uint8_t> states)
    : lattice_(lattice), box_(box), p_(p), key_(key), states_(std::move(states)) {
    if (box.radius < 0) throw std::invalid_argument("configuration: empty box");
    if (states_.size() != size_t(box.site_count()))
        throw std::invalid_argument("configuration: state count does not match box");
}

Configuration sample(LatticeKind lattice, BoxRegion box, double p, TrialKey key) {
    return Configuration(lattice, box, p, key);
}

Configuration Configuration::flip(Site s) const {
    if (!box_.contains(s)) throw std::invalid_argument("flip: site outside box");
    std::vector<uint8_t> st = states_;
    st[index_of(s)] ^= 1;
    return Configuration(lattice_, box_, p_, key_, std::move(st));
}

std::string Configuration::serialize() const {
    std::ostringstream os;
    os << "perc-config 1\n";
    os << "lattice " << (lattice_ == LatticeKind::Triangular ? "triangular" : "square-site")
       << "\n";
    os << "center " << box_.center.x << " " << box_.center.y << "\n";
    os << "radius " << box_.radius << "\n";
    os.precision(17);
    os << "p " << p_ << "\n";
    os << "key " << key_.master_seed << " " << key_.experiment_id << " " << key_.trial_index
       << "\n";
    // Row-major runs, each row as alternating run lengths starting with zeros.
    const int w = width();
    for (int row = 0; row < w; ++row) {
        uint8_t cur = 0;
        int run = 0;
        bool first = true;
        for (int col = 0; col < w; ++col) {
            uint8_t st = states_[size_t(row) * w + col];
            if (st == cur) {
                ++run;
            } else {
                os << (first ? "" : " ") << run;
                first = false;
                cur = st;
                run = 1;
            }
        }
        os << (first ? "" : " ") << run << "\n";
    }
    return os.str();
}

Configuration Configuration::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string magic, word;
    int version = 0;
    is >> magic >> version;
    if (magic != "perc-config" || version != 1)
        throw std::invalid_argument("deserialize: bad header");
    LatticeKind lattice = LatticeKind::Triangular;
    BoxRegion box;
    double p = 0.5;
    TrialKey key;
    while (is >> word) {
        if (word == "lattice") {
            std::string kind;
            is >> kind;
            lattice = kind == "triangular" ? LatticeKind::Triangular : LatticeKind::SquareSite;
        } else if (word == "center") {
            is >> box.center.x >> box.center.y;
        } else if (word == "radius") {
            is >> box.radius;
        } else if (word == "p") {
            is >> p;
        } else if (word == "key") {
            is >> key.master_seed >> key.experiment_id >> key.trial_index;
            break;
        } else {
            throw std::invalid_argument("deserialize: unknown field " + word);
        }
    }
    const int w = 2 * box.radius + 1;
    std::vector<uint8_t> states;
    states.reserve(size_t(w) * w);
    for (int row = 0; row < w; ++row) {
        int filled = 0;
        uint8_t cur = 0;
        while (filled < w) {
            long run = 0;
            if (!(is >> run) || run < 0 || filled + run > w)
                throw std::invalid_argument("deserialize: bad run data");
            states.insert(states.end(), size_t(run), cur);
            filled += int(run);
            cur ^= 1;
        }
    }
    return Configuration(lattice, box, p, key, std::move(states));
}

}  // namespace perc
