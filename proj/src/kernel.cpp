#include "specgrowth/kernel.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "specgrowth/ball.hpp"

namespace specgrowth {

TailModel TailModel::geometric(double c, double ratio, std::optional<double> lower) {
    TailModel t;
    t.kind = Kind::Geometric;
    t.c = c;
    t.ratio = ratio;
    if (lower) {
        t.has_lower = true;
        t.lower_c = *lower;
    }
    return t;
}

TailModel TailModel::polynomial(double c, double degree) {
    TailModel t;
    t.kind = Kind::Polynomial;
    t.c = c;
    t.degree = degree;
    return t;
}

LengthKernel::LengthKernel(std::string label, EvalFn eval, CoercivityFn coercivity,
                           TailModel tail, bool integer_valued, PrepareFn prepare)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      coercivity_(std::move(coercivity)),
      tail_(tail),
      integer_valued_(integer_valued),
      prepare_(std::move(prepare)) {}

double LengthKernel::coercivity(std::int64_t word_len) const {
    if (!coercivity_) return 0.0;
    return coercivity_(word_len);
}

void LengthKernel::prepare(int horizon) const {
    if (prepare_) prepare_(horizon);
}

namespace {

// Word-length table grown by BFS; prepare() extends it under a lock, after
// which evaluations are pure lookups and safe to share across threads.
class WordLengthTable {
public:
    explicit WordLengthTable(GroupPtr model) : enumerator_(std::move(model)) {}

    void extend(int horizon) {
        std::lock_guard<std::mutex> lock(mutex_);
        enumerator_.extend_to(horizon);
    }

    double lookup(const GroupElement& g) const {
        if (auto l = enumerator_.length_of(g)) return static_cast<double>(*l);
        if (enumerator_.exhausted()) throw kernel_error("element outside the group enumeration");
        throw kernel_error("word length requested beyond the prepared horizon");
    }

private:
    mutable std::mutex mutex_;
    BallEnumerator enumerator_;
};

// Certified gamma_n bounds for the word-length spectrum of the built-in
// models. Free: sphere(n) = 2k(2k-1)^{n-1}, exact. Z^d: sphere(n) <=
// 2(2n+1)^{d-1} <= 2*3^{d-1} n^{d-1}. Z/m: sphere(n) <= 2. Heisenberg:
// |a|,|b| <= n and |c| <= n^2 inside ball(n), so ball(n) <= 27 n^4.
// Products carry no certified bound here.
TailModel wordlength_tail(const GroupModel& model) {
    if (model.name().rfind("free(", 0) == 0) {
        double k = static_cast<double>(model.generators().size()) / 2.0;
        double r = 2.0 * k - 1.0;
        if (r <= 1.0) return TailModel::geometric(2.0, 1.0, 2.0); // free(1) = Z
        double c = 2.0 * k / r;
        return TailModel::geometric(c, r, c); // exact: gamma_n = c * r^n
    }
    if (model.name().rfind("zd(", 0) == 0) {
        double d = static_cast<double>(model.generators().size()) / 2.0;
        if (d == 1.0) return TailModel::geometric(2.0, 1.0, 2.0);
        return TailModel::polynomial(2.0 * std::pow(3.0, d - 1.0), d - 1.0);
    }
    if (model.name().rfind("cyclic(", 0) == 0) return TailModel::polynomial(2.0, 0.0);
    if (model.name() == "heisenberg") return TailModel::polynomial(27.0, 4.0);
    if (model.name().rfind("product(", 0) == 0) return TailModel::none(); // combined by caller
    return TailModel::none();
}

} // namespace

LengthKernel wordlength_kernel(GroupPtr model) {
    auto coercivity = [](std::int64_t n) { return static_cast<double>(n); };
    TailModel tail = wordlength_tail(*model);

    // closed form when the model has one, shared BFS table otherwise
    GroupElement probe = model->generators().front();
    if (model->exact_word_length(probe)) {
        auto m = model;
        return LengthKernel(
            "wordlength", [m](const GroupElement& g) {
                return static_cast<double>(*m->exact_word_length(g));
            },
            coercivity, tail, true);
    }
    auto table = std::make_shared<WordLengthTable>(model);
    return LengthKernel(
        "wordlength", [table](const GroupElement& g) { return table->lookup(g); }, coercivity,
        tail, true, [table](int horizon) { table->extend(horizon); });
}

LengthKernel l1_kernel(GroupPtr model) {
    // l1 norm of the natural coordinates; on Z^d and Z/m (and products) this
    // coincides with the word length for the standard generators
    auto probe = model->exact_word_length(model->generators().front());
    if (!probe || model->name().find("free(") != std::string::npos ||
        model->name().find("heisenberg") != std::string::npos)
        throw kernel_error("l1 kernel needs a coordinate model (zd, cyclic, products)");
    auto m = model;
    return LengthKernel(
        "l1", [m](const GroupElement& g) { return static_cast<double>(*m->exact_word_length(g)); },
        [](std::int64_t n) { return static_cast<double>(n); }, wordlength_tail(*model), true);
}

LengthKernel l2sq_kernel(GroupPtr model) {
    if (model->name().rfind("zd(", 0) != 0)
        throw kernel_error("l2sq kernel is defined on zd(d)");
    double d = static_cast<double>(model->generators().size()) / 2.0;
    auto m = model;
    return LengthKernel(
        "l2sq",
        [m](const GroupElement& g) {
            double s = 0.0;
            for (std::int64_t x : m->decode_natural(g)) s += static_cast<double>(x * x);
            return s;
        },
        // min of sum x_i^2 over |x|_1 = n is n^2/d
        [d](std::int64_t n) { return static_cast<double>(n) * static_cast<double>(n) / d; },
        // gamma_n <= #{sum x^2 <= n} <= (2 sqrt(n) + 1)^d <= 3^d n^{d/2}
        TailModel::polynomial(std::pow(3.0, d), d / 2.0), true);
}

LengthKernel power_kernel(GroupPtr model, double alpha) {
    if (alpha <= 0.0) throw kernel_error("power(alpha) needs alpha > 0");
    bool on_z = model->name() == "zd(1)";
    bool on_cyclic = model->name().rfind("cyclic(", 0) == 0;
    if (!on_z && !on_cyclic) throw kernel_error("power kernel is defined on zd(1) or cyclic(m)");
    auto m = model;
    TailModel tail = (alpha == 1.0)
                         ? TailModel::geometric(2.0, 1.0, on_z ? std::optional<double>(2.0)
                                                               : std::nullopt)
                         // gamma_n <= #{|k| <= n^{1/alpha}} <= 3 n^{1/alpha}
                         : TailModel::polynomial(3.0, 1.0 / alpha);
    std::ostringstream label;
    label << "power(" << alpha << ")";
    return LengthKernel(
        label.str(),
        [m, alpha](const GroupElement& g) {
            double n = static_cast<double>(*m->exact_word_length(g));
            return std::pow(n, alpha);
        },
        [alpha](std::int64_t n) { return std::pow(static_cast<double>(n), alpha); }, tail,
        alpha == std::floor(alpha));
}

LengthKernel sum_kernel(LengthKernel a, LengthKernel b) {
    std::string label = "sum(" + a.label() + ", " + b.label() + ")";
    bool integer = a.integer_valued() && b.integer_valued();
    auto pa = std::make_shared<LengthKernel>(std::move(a));
    auto pb = std::make_shared<LengthKernel>(std::move(b));
    return LengthKernel(
        label, [pa, pb](const GroupElement& g) { return (*pa)(g) + (*pb)(g); },
        [pa, pb](std::int64_t n) { return pa->coercivity(n) + pb->coercivity(n); },
        TailModel::none(), integer,
        [pa, pb](int h) {
            pa->prepare(h);
            pb->prepare(h);
        });
}

LengthKernel scale_kernel(double c, LengthKernel k) {
    if (c <= 0.0) throw kernel_error("scale(c, k) needs c > 0");
    std::ostringstream label;
    label << "scale(" << c << ", " << k.label() << ")";
    auto pk = std::make_shared<LengthKernel>(std::move(k));
    return LengthKernel(
        label.str(), [pk, c](const GroupElement& g) { return c * (*pk)(g); },
        [pk, c](std::int64_t n) { return c * pk->coercivity(n); }, TailModel::none(),
        pk->integer_valued() && c == std::floor(c), [pk](int h) { pk->prepare(h); });
}

LengthKernel table_kernel(GroupPtr model, const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw kernel_error("cannot open kernel table '" + csv_path + "'");
    auto table = std::make_shared<std::unordered_map<GroupElement, double, GroupElementHash>>();
    std::string line;
    bool integer = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find_last_of(',');
        if (comma == std::string::npos)
            throw kernel_error("table row needs 'encoding,value': " + line);
        GroupElement g = parse_element(*model, line.substr(0, comma));
        double v = 0.0;
        try {
            v = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw kernel_error("bad table value in row: " + line);
        }
        if (v < 0.0) throw kernel_error("table kernel values must be nonnegative");
        if (v != std::floor(v)) integer = false;
        (*table)[g] = v;
    }
    if (auto it = table->find(model->identity()); it == table->end() || it->second != 0.0)
        throw kernel_error("table kernel must map the identity to 0");
    return LengthKernel(
        "table(" + csv_path + ")",
        [table](const GroupElement& g) {
            auto it = table->find(g);
            if (it == table->end()) throw kernel_error("element missing from kernel table");
            return it->second;
        },
        {}, TailModel::none(), integer);
}

Homomorphism expsum_hom(GroupPtr model, int generator_index) {
    if (model->name().rfind("free(", 0) != 0)
        throw kernel_error("expsum(i) is defined on free(k)");
    int rank = static_cast<int>(model->generators().size()) / 2;
    if (generator_index < 1 || generator_index > rank)
        throw kernel_error("expsum index out of range");
    auto m = model;
    return Homomorphism{
        "expsum(" + std::to_string(generator_index) + ")",
        [m, generator_index](const GroupElement& g) {
            std::int64_t s = 0;
            for (std::int64_t letter : m->decode_natural(g)) {
                if (letter == generator_index) ++s;
                if (letter == -generator_index) --s;
            }
            return s;
        }};
}

Homomorphism coord_hom(GroupPtr model, int coordinate) {
    if (model->name().rfind("zd(", 0) != 0) throw kernel_error("coord(i) is defined on zd(d)");
    int dim = static_cast<int>(model->generators().size()) / 2;
    if (coordinate < 0 || coordinate >= dim) throw kernel_error("coord index out of range");
    auto m = model;
    return Homomorphism{"coord(" + std::to_string(coordinate) + ")",
                        [m, coordinate](const GroupElement& g) {
                            return m->decode_natural(g)[coordinate];
                        }};
}

LengthKernel pullback_kernel(GroupPtr model, Homomorphism hom, LengthKernel target) {
    auto z = make_lattice_group(1);
    auto pt = std::make_shared<LengthKernel>(std::move(target));
    auto map = hom.map;
    std::string label = "pullback(" + hom.label + ", " + pt->label() + ")";
    // coercivity and tails do not transport through a homomorphism
    return LengthKernel(
        label,
        [z, pt, map](const GroupElement& g) {
            return (*pt)(z->encode_natural({map(g)}));
        },
        {}, TailModel::none(), pt->integer_valued());
}

namespace {

std::string strip_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_call(const std::string& spec) {
    auto open = spec.find('(');
    if (open == std::string::npos) return {strip_ws(spec), ""};
    if (spec.back() != ')') throw spec_parse_error("unbalanced parentheses in '" + spec + "'");
    return {strip_ws(spec.substr(0, open)), spec.substr(open + 1, spec.size() - open - 2)};
}

std::vector<std::string> split_args(const std::string& args) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : args) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(strip_ws(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!strip_ws(cur).empty() || !out.empty()) out.push_back(strip_ws(cur));
    return out;
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(strip_ws(s), &pos);
        if (pos != strip_ws(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw spec_parse_error("expected number for " + what + ", got '" + s + "'");
    }
}

Homomorphism parse_hom_spec(GroupPtr model, const std::string& spec) {
    auto [head, args] = split_call(strip_ws(spec));
    if (head == "expsum")
        return expsum_hom(model, static_cast<int>(parse_real(args, "expsum(i)")));
    if (head == "coord") return coord_hom(model, static_cast<int>(parse_real(args, "coord(i)")));
    throw spec_parse_error("unknown homomorphism spec '" + spec + "'");
}

} // namespace

LengthKernel parse_kernel_spec(GroupPtr model, const std::string& spec) {
    auto [head, args] = split_call(strip_ws(spec));
    try {
        if (head == "wordlength" || head == "l1" || head == "l2sq") {
            if (!args.empty()) throw spec_parse_error(head + " takes no arguments");
            if (head == "wordlength") return wordlength_kernel(model);
            if (head == "l1") return l1_kernel(model);
            return l2sq_kernel(model);
        }
        if (head == "power") return power_kernel(model, parse_real(args, "power(alpha)"));
        if (head == "pullback") {
            auto parts = split_args(args);
            if (parts.size() != 2)
                throw spec_parse_error("pullback(hom, kernel) takes two arguments");
            return pullback_kernel(model, parse_hom_spec(model, parts[0]),
                                   parse_kernel_spec(make_lattice_group(1), parts[1]));
        }
        if (head == "sum") {
            auto parts = split_args(args);
            if (parts.size() != 2) throw spec_parse_error("sum(k1, k2) takes two arguments");
            return sum_kernel(parse_kernel_spec(model, parts[0]),
                              parse_kernel_spec(model, parts[1]));
        }
        if (head == "scale") {
            auto parts = split_args(args);
            if (parts.size() != 2) throw spec_parse_error("scale(c, k) takes two arguments");
            return scale_kernel(parse_real(parts[0], "scale(c, .)"),
                                parse_kernel_spec(model, parts[1]));
        }
        if (head == "table") return table_kernel(model, strip_ws(args));
    } catch (const kernel_error& e) {
        throw spec_parse_error(e.what());
    }
    throw spec_parse_error("unknown kernel spec '" + spec + "'");
}

} // namespace specgrowth
