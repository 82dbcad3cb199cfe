#include "specgrowth/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace specgrowth {

namespace {

// Coordinates are kept well inside int32 range; enumeration caps make larger
// values unreachable anyway.
constexpr std::int64_t kCoordLimit = (std::int64_t{1} << 30);

std::int64_t check_coord(std::int64_t n) {
    if (n <= -kCoordLimit || n >= kCoordLimit)
        throw std::overflow_error("group coordinate out of range");
    return n;
}

} // namespace

std::uint32_t GroupElement::zigzag(std::int64_t n) {
    check_coord(n);
    return n >= 0 ? static_cast<std::uint32_t>(2 * n)
                  : static_cast<std::uint32_t>(-2 * n - 1);
}

std::int64_t GroupElement::unzigzag(std::uint32_t z) {
    return (z % 2 == 0) ? static_cast<std::int64_t>(z / 2)
                        : -static_cast<std::int64_t>((z + 1) / 2);
}

std::size_t GroupElement::hash() const noexcept {
    // FNV-1a over the code words
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t w : code_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    h ^= code_.size();
    h *= 1099511628211ull;
    return static_cast<std::size_t>(h);
}

namespace {

// ---------------------------------------------------------------------------
// Free group F_k: reduced words, letter = zigzag(+-i) for generator i (1-based)

class FreeGroup final : public GroupModel {
public:
    explicit FreeGroup(int rank) : rank_(rank) {
        if (rank < 1) throw spec_parse_error("free(k) needs k >= 1");
        for (int i = 1; i <= rank; ++i) {
            generators_.push_back(letter(i));
            generators_.push_back(letter(-i));
        }
    }

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
        const auto& u = a.code();
        const auto& v = b.code();
        std::size_t cut = 0; // cancellation length at the junction
        while (cut < u.size() && cut < v.size() &&
               u[u.size() - 1 - cut] == flip(v[cut]))
            ++cut;
        std::vector<std::uint32_t> w;
        w.reserve(u.size() + v.size() - 2 * cut);
        w.insert(w.end(), u.begin(), u.end() - cut);
        w.insert(w.end(), v.begin() + cut, v.end());
        return GroupElement(std::move(w));
    }

    GroupElement invert(const GroupElement& a) const override {
        const auto& u = a.code();
        std::vector<std::uint32_t> w(u.rbegin(), u.rend());
        for (auto& x : w) x = flip(x);
        return GroupElement(std::move(w));
    }

    std::string name() const override { return "free(" + std::to_string(rank_) + ")"; }

    std::optional<std::int64_t> exact_word_length(const GroupElement& g) const override {
        return static_cast<std::int64_t>(g.code().size());
    }

    std::vector<std::int64_t> decode_natural(const GroupElement& g) const override {
        std::vector<std::int64_t> out;
        out.reserve(g.code().size());
        for (std::uint32_t w : g.code()) out.push_back(GroupElement::unzigzag(w));
        return out;
    }

    GroupElement encode_natural(const std::vector<std::int64_t>& coords) const override {
        GroupElement g; // fold letters through multiply so input need not be reduced
        for (std::int64_t c : coords) {
            if (c == 0 || std::abs(c) > rank_)
                throw spec_parse_error("free group letter out of range");
            g = multiply(g, letter(c));
        }
        return g;
    }

    int rank() const noexcept { return rank_; }

private:
    static GroupElement letter(std::int64_t signed_index) {
        return GroupElement({GroupElement::zigzag(signed_index)});
    }
    static std::uint32_t flip(std::uint32_t letter) {
        return letter % 2 == 0 ? letter - 1 : letter + 1; // zigzag sign swap
    }
    int rank_;
};

// ---------------------------------------------------------------------------
// Z^d, coordinate vectors

class LatticeGroup final : public GroupModel {
public:
    explicit LatticeGroup(int dim) : dim_(dim) {
        if (dim < 1) throw spec_parse_error("zd(d) needs d >= 1");
        identity_ = encode(std::vector<std::int64_t>(dim, 0));
        for (int i = 0; i < dim; ++i)
            for (std::int64_t s : {std::int64_t{1}, std::int64_t{-1}}) {
                std::vector<std::int64_t> v(dim, 0);
                v[i] = s;
                generators_.push_back(encode(v));
            }
    }

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
        auto u = decode_natural(a), v = decode_natural(b);
        for (int i = 0; i < dim_; ++i) u[i] = check_coord(u[i] + v[i]);
        return encode(u);
    }

    GroupElement invert(const GroupElement& a) const override {
        auto u = decode_natural(a);
        for (auto& x : u) x = -x;
        return encode(u);
    }

    std::string name() const override { return "zd(" + std::to_string(dim_) + ")"; }

    std::optional<std::int64_t> exact_word_length(const GroupElement& g) const override {
        std::int64_t n = 0;
        for (std::int64_t x : decode_natural(g)) n += std::abs(x);
        return n;
    }

    std::vector<std::int64_t> decode_natural(const GroupElement& g) const override {
        std::vector<std::int64_t> out(dim_);
        for (int i = 0; i < dim_; ++i) out[i] = GroupElement::unzigzag(g.code()[i]);
        return out;
    }

    GroupElement encode_natural(const std::vector<std::int64_t>& coords) const override {
        if (static_cast<int>(coords.size()) != dim_)
            throw spec_parse_error("zd element needs " + std::to_string(dim_) + " coordinates");
        return encode(coords);
    }

private:
    static GroupElement encode(const std::vector<std::int64_t>& v) {
        std::vector<std::uint32_t> code(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) code[i] = GroupElement::zigzag(v[i]);
        return GroupElement(std::move(code));
    }
    int dim_;
};

// ---------------------------------------------------------------------------
// Z/m, residue in [0, m)

class CyclicGroup final : public GroupModel {
public:
    explicit CyclicGroup(std::int64_t m) : m_(m) {
        if (m < 1 || m >= kCoordLimit) throw spec_parse_error("cyclic(m) needs 1 <= m < 2^30");
        identity_ = encode(0);
        if (m == 1) {
            generators_.push_back(identity_);
        } else if (m == 2) {
            generators_.push_back(encode(1)); // self-inverse
        } else {
            generators_.push_back(encode(1));
            generators_.push_back(encode(m - 1));
        }
    }

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
        return encode((residue(a) + residue(b)) % m_);
    }

    GroupElement invert(const GroupElement& a) const override {
        return encode((m_ - residue(a)) % m_);
    }

    std::string name() const override { return "cyclic(" + std::to_string(m_) + ")"; }

    std::optional<std::int64_t> exact_word_length(const GroupElement& g) const override {
        std::int64_t r = residue(g);
        return std::min(r, m_ - r);
    }

    std::vector<std::int64_t> decode_natural(const GroupElement& g) const override {
        return {residue(g)};
    }

    GroupElement encode_natural(const std::vector<std::int64_t>& coords) const override {
        if (coords.size() != 1) throw spec_parse_error("cyclic element needs one residue");
        std::int64_t r = coords[0] % m_;
        if (r < 0) r += m_;
        return encode(r);
    }

private:
    std::int64_t residue(const GroupElement& g) const {
        return GroupElement::unzigzag(g.code()[0]);
    }
    static GroupElement encode(std::int64_t r) {
        return GroupElement({GroupElement::zigzag(r)});
    }
    std::int64_t m_;
};

// ---------------------------------------------------------------------------
// Discrete Heisenberg group: (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]]

class HeisenbergGroup final : public GroupModel {
public:
    HeisenbergGroup() {
        identity_ = encode(0, 0, 0);
        generators_.push_back(encode(1, 0, 0));
        generators_.push_back(encode(-1, 0, 0));
        generators_.push_back(encode(0, 1, 0));
        generators_.push_back(encode(0, -1, 0));
    }

    GroupElement multiply(const GroupElement& x, const GroupElement& y) const override {
        auto u = decode_natural(x), v = decode_natural(y);
        return encode(check_coord(u[0] + v[0]), check_coord(u[1] + v[1]),
                      check_coord(u[2] + v[2] + u[0] * v[1]));
    }

    GroupElement invert(const GroupElement& x) const override {
        auto u = decode_natural(x);
        return encode(-u[0], -u[1], u[0] * u[1] - u[2]);
    }

    std::string name() const override { return "heisenberg"; }

    std::vector<std::int64_t> decode_natural(const GroupElement& g) const override {
        return {GroupElement::unzigzag(g.code()[0]), GroupElement::unzigzag(g.code()[1]),
                GroupElement::unzigzag(g.code()[2])};
    }

    GroupElement encode_natural(const std::vector<std::int64_t>& coords) const override {
        if (coords.size() != 3) throw spec_parse_error("heisenberg element needs 3 coordinates");
        return encode(coords[0], coords[1], coords[2]);
    }

private:
    static GroupElement encode(std::int64_t a, std::int64_t b, std::int64_t c) {
        return GroupElement({GroupElement::zigzag(a), GroupElement::zigzag(b),
                             GroupElement::zigzag(c)});
    }
};

// ---------------------------------------------------------------------------
// Direct product A x B; encoding = [|enc A|] ++ enc A ++ enc B, generators =
// embedded generators of A then of B.

class ProductGroup final : public GroupModel {
public:
    ProductGroup(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {
        identity_ = pack(a_->identity(), b_->identity());
        for (const auto& g : a_->generators()) generators_.push_back(pack(g, b_->identity()));
        for (const auto& g : b_->generators()) generators_.push_back(pack(a_->identity(), g));
    }

    GroupElement multiply(const GroupElement& x, const GroupElement& y) const override {
        auto [xa, xb] = unpack(x);
        auto [ya, yb] = unpack(y);
        return pack(a_->multiply(xa, ya), b_->multiply(xb, yb));
    }

    GroupElement invert(const GroupElement& x) const override {
        auto [xa, xb] = unpack(x);
        return pack(a_->invert(xa), b_->invert(xb));
    }

    std::string name() const override {
        return "product(" + a_->name() + ", " + b_->name() + ")";
    }

    std::optional<std::int64_t> exact_word_length(const GroupElement& g) const override {
        auto [ga, gb] = unpack(g);
        auto la = a_->exact_word_length(ga);
        auto lb = b_->exact_word_length(gb);
        if (la && lb) return *la + *lb;
        return std::nullopt;
    }

    std::vector<std::int64_t> decode_natural(const GroupElement& g) const override {
        auto [ga, gb] = unpack(g);
        auto va = a_->decode_natural(ga);
        auto vb = b_->decode_natural(gb);
        va.insert(va.end(), vb.begin(), vb.end());
        return va;
    }

    GroupElement encode_natural(const std::vector<std::int64_t>&) const override {
        throw spec_parse_error("product elements must be encoded part by part");
    }

    const GroupModel& first() const noexcept { return *a_; }
    const GroupModel& second() const noexcept { return *b_; }

    GroupElement pack(const GroupElement& ga, const GroupElement& gb) const {
        std::vector<std::uint32_t> code;
        code.reserve(1 + ga.code().size() + gb.code().size());
        code.push_back(static_cast<std::uint32_t>(ga.code().size()));
        code.insert(code.end(), ga.code().begin(), ga.code().end());
        code.insert(code.end(), gb.code().begin(), gb.code().end());
        return GroupElement(std::move(code));
    }

    std::pair<GroupElement, GroupElement> unpack(const GroupElement& g) const {
        const auto& c = g.code();
        std::size_t la = c[0];
        return {GroupElement({c.begin() + 1, c.begin() + 1 + la}),
                GroupElement({c.begin() + 1 + la, c.end()})};
    }

private:
    GroupPtr a_, b_;
};

// ---------------------------------------------------------------------------
// grammar helpers

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// "head(args)" -> {head, args}; "head" -> {head, ""}
std::pair<std::string, std::string> split_call(const std::string& spec) {
    auto open = spec.find('(');
    if (open == std::string::npos) return {strip(spec), ""};
    if (spec.back() != ')') throw spec_parse_error("unbalanced parentheses in '" + spec + "'");
    return {strip(spec.substr(0, open)), spec.substr(open + 1, spec.size() - open - 2)};
}

// split args on top-level commas
std::vector<std::string> split_args(const std::string& args) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : args) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
    return out;
}

std::int64_t parse_int_arg(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(strip(s), &pos);
        if (pos != strip(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw spec_parse_error("expected integer for " + what + ", got '" + s + "'");
    }
}

} // namespace

GroupPtr make_free_group(int rank) { return std::make_shared<FreeGroup>(rank); }
GroupPtr make_lattice_group(int dim) { return std::make_shared<LatticeGroup>(dim); }
GroupPtr make_cyclic_group(std::int64_t m) { return std::make_shared<CyclicGroup>(m); }
GroupPtr make_heisenberg_group() { return std::make_shared<HeisenbergGroup>(); }
GroupPtr make_product_group(GroupPtr a, GroupPtr b) {
    return std::make_shared<ProductGroup>(std::move(a), std::move(b));
}

GroupPtr parse_group_spec(const std::string& spec) {
    auto [head, args] = split_call(strip(spec));
    if (head == "free") return make_free_group(static_cast<int>(parse_int_arg(args, "free(k)")));
    if (head == "zd") return make_lattice_group(static_cast<int>(parse_int_arg(args, "zd(d)")));
    if (head == "cyclic") return make_cyclic_group(parse_int_arg(args, "cyclic(m)"));
    if (head == "heisenberg") {
        if (!args.empty()) throw spec_parse_error("heisenberg takes no arguments");
        return make_heisenberg_group();
    }
    if (head == "product") {
        auto parts = split_args(args);
        if (parts.size() != 2) throw spec_parse_error("product(spec, spec) takes two arguments");
        return make_product_group(parse_group_spec(parts[0]), parse_group_spec(parts[1]));
    }
    throw spec_parse_error("unknown group spec '" + spec + "'");
}

std::string element_text(const GroupModel& model, const GroupElement& g) {
    if (auto* p = dynamic_cast<const ProductGroup*>(&model)) {
        auto [ga, gb] = p->unpack(g);
        return element_text(p->first(), ga) + " | " + element_text(p->second(), gb);
    }
    std::ostringstream os;
    bool first = true;
    for (std::int64_t c : model.decode_natural(g)) {
        if (!first) os << ' ';
        os << c;
        first = false;
    }
    return os.str();
}

namespace {

// number of non-product factors in the model tree
int leaf_count(const GroupModel& model) {
    if (auto* p = dynamic_cast<const ProductGroup*>(&model))
        return leaf_count(p->first()) + leaf_count(p->second());
    return 1;
}

std::string join_segments(const std::vector<std::string>& segs, std::size_t b, std::size_t e) {
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
        if (i > b) out += " | ";
        out += segs[i];
    }
    return out;
}

} // namespace

GroupElement parse_element(const GroupModel& model, const std::string& text) {
    if (auto* p = dynamic_cast<const ProductGroup*>(&model)) {
        std::vector<std::string> segs;
        std::string cur;
        for (char ch : text) {
            if (ch == '|') {
                segs.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        segs.push_back(cur);
        std::size_t want = static_cast<std::size_t>(leaf_count(model));
        if (segs.size() != want)
            throw spec_parse_error("product element needs " + std::to_string(want) +
                                   " '|'-separated parts");
        std::size_t first = static_cast<std::size_t>(leaf_count(p->first()));
        return p->pack(parse_element(p->first(), join_segments(segs, 0, first)),
                       parse_element(p->second(), join_segments(segs, first, segs.size())));
    }
    std::vector<std::int64_t> coords;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) coords.push_back(parse_int_arg(tok, "element coordinate"));
    return model.encode_natural(coords);
}

} // namespace specgrowth
