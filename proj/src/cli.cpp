#include "freearr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "freearr/analysis.hpp"
#include "freearr/errors.hpp"
#include "freearr/fqscan.hpp"
#include "freearr/io.hpp"

namespace freearr::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string command;
    std::string path;
    std::string target = "infinity";
    std::string sub;
    std::int64_t prime = 0;
    std::string format = "text";
    std::size_t line_index = 0;
    std::int64_t corrupt_b2 = 0;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("bad index '" + item + "' in --sub list");
        out.push_back(std::stoul(item));
    }
    return out;
}

RestrictionTarget parse_target(const std::string& text, const Arrangement& a) {
    if (text == "infinity") return RestrictionTarget::infinity();
    const std::string prefix = "member:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string idx = text.substr(prefix.size());
        if (!idx.empty() && idx.find_first_not_of("0123456789") == std::string::npos) {
            const std::size_t i = std::stoul(idx);
            if (i >= a.size()) throw UsageError("target index " + idx + " out of range for " + std::to_string(a.size()) + " lines");
            return RestrictionTarget::member_line(i);
        }
    }
    throw UsageError("--target must be 'infinity' or 'member:<i>', got '" + text + "'");
}

Arrangement reduce_mod(const Arrangement& a, std::int64_t p) {
    if (a.field().kind() == FieldKind::prime) {
        if (a.field().modulus() != p) throw UsageError("--prime " + std::to_string(p) + " conflicts with field " + a.field().to_string());
        return a;
    }
    if (a.field().kind() != FieldKind::rationals) throw UsageError("--prime needs an input over Q");
    const Field f = Field::prime(p);
    std::vector<Line> lines;
    for (const auto& l : a.lines()) {
        const Scalar x = Scalar::from_rational(f, l.a().rational_part());
        const Scalar y = Scalar::from_rational(f, l.b().rational_part());
        if (x.is_zero() && y.is_zero()) throw UsageError("line " + l.to_string() + " degenerates mod " + std::to_string(p));
        lines.push_back(Line::normalize(x, y, Scalar::from_rational(f, l.c().rational_part())));
    }
    try {
        return Arrangement(f, std::move(lines));
    } catch (const MembershipError&) {
        throw UsageError("two lines coincide mod " + std::to_string(p));
    }
}

std::string factor(std::int64_t root) {
    if (root == 0) return "t";
    return root > 0 ? "(t-" + std::to_string(root) + ")" : "(t+" + std::to_string(-root) + ")";
}

std::optional<std::string> factored(const CharPoly& cp) {
    const RootPair rp = roots(cp);
    if (!rp.is_integer()) return std::nullopt;
    if (rp.int_low() == rp.int_high()) return factor(rp.int_low()) + "^2";
    return factor(rp.int_low()) + factor(rp.int_high());
}

std::string pairs_text(const std::map<std::int64_t, std::int64_t>& m) {
    std::string s;
    for (const auto& [v, c] : m) s += std::to_string(v) + " " + std::to_string(c) + "\n";
    return s;
}

json pairs_json(const std::map<std::int64_t, std::int64_t>& m) {
    json arr = json::array();
    for (const auto& [v, c] : m) arr.push_back({{"value", v}, {"count", c}});
    return arr;
}

json entry_json(const CriterionEntry& e) {
    json ev = json::object();
    for (const auto& [k, v] : e.evidence) ev[k] = v;
    return {{"criterion", e.name}, {"applicable", e.applicable}, {"conclusion", to_string(e.conclusion)}, {"evidence", ev}};
}

std::string entry_text(const CriterionEntry& e) {
    std::string s = e.name + ": " + (e.applicable ? "applicable, " + to_string(e.conclusion) : std::string("not applicable"));
    for (const auto& [k, v] : e.evidence) s += " " + k + "=" + (v.find(' ') == std::string::npos ? v : "\"" + v + "\"");
    return s;
}

class Runner {
public:
    Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out), json_(opt.format == "json") {}

    int run() {
        const std::string& c = opt_.command;
        if (c == "exponents" && opt_.path.ends_with(".marr")) return exponents_marr();
        Arrangement a = load_arrangement(opt_.path);
        if (opt_.prime != 0) a = reduce_mod(a, opt_.prime);
        if (c == "chi") return chi(a);
        if (c == "roots") return roots_cmd(a);
        if (c == "spectrum") return spectrum(a);
        if (c == "ziegler") return ziegler(a);
        if (c == "exponents") return exponents_arr(a);
        if (c == "free") return free_cmd(a);
        if (c == "criteria") return criteria(a);
        if (c == "pair") return pair(a);
        if (c == "order") return order(a);
        if (c == "fq-count") return fq_count(a);
        if (c == "fq-spectrum") return fq_spectrum(a);
        return verify(a);
    }

private:
    void emit(const json& j) { out_ << j.dump() << "\n"; }

    Arrangement sub_of(const Arrangement& a) const {
        const auto idx = parse_index_list(opt_.sub);
        for (auto i : idx)
            if (i >= a.size()) throw UsageError("--sub index " + std::to_string(i) + " out of range");
        return a.subarrangement(idx);
    }

    int chi(const Arrangement& a) {
        const CharPoly& cp = a.char_poly();
        const auto f = factored(cp);
        if (json_) {
            emit({{"command", "chi"}, {"n", cp.n}, {"b2", cp.b2}, {"chi", cp.to_string()}, {"factored", f ? json(*f) : json(nullptr)}});
        } else {
            out_ << cp.to_string() << (f ? " = " + *f : "") << "\n";
            out_ << "n = " << cp.n << ", b2 = " << cp.b2 << "\n";
        }
        return kExitOk;
    }

    int roots_cmd(const Arrangement& a) {
        const RootPair rp = roots(a.char_poly());
        if (json_)
            emit({{"command", "roots"}, {"discriminant", rp.discriminant}, {"kind", to_string(rp.kind)}, {"low", rp.low.to_string()},
                  {"high", rp.high.to_string()}});
        else
            out_ << rp.low.to_string() << ", " << rp.high.to_string() << " (" << to_string(rp.kind) << ")\n";
        return kExitOk;
    }

    int spectrum(const Arrangement& a) {
        const RootWindowReport rw = verify_root_window(a);
        const bool exhaustive = a.field().kind() == FieldKind::prime;
        if (json_) {
            emit({{"command", "spectrum"}, {"members", pairs_json(rw.member_counts)}, {"externals", pairs_json(rw.external_counts)},
                  {"externals_exhaustive", exhaustive}, {"violations", rw.violations}});
        } else {
            out_ << "members\n" << pairs_text(rw.member_counts);
            out_ << (exhaustive ? "externals (all lines)\n" : "externals (candidates)\n") << pairs_text(rw.external_counts);
            for (const auto& v : rw.violations) out_ << "violation: " << v << "\n";
        }
        return rw.ok() ? kExitOk : kExitInvariant;
    }

    int ziegler(const Arrangement& a) {
        const RestrictionTarget t = parse_target(opt_.target, a);
        const Multiarrangement m = ziegler_restriction(a, t);
        if (json_) {
            json cs = json::array();
            for (const auto& c : m.centrals()) cs.push_back({{"a", c.a.to_string()}, {"b", c.b.to_string()}, {"multiplicity", c.multiplicity}});
            emit({{"command", "ziegler"}, {"target", t.to_string()}, {"total", m.total()}, {"centrals", cs}});
        } else {
            out_ << serialize(m);
        }
        return kExitOk;
    }

    int print_exponents(const Multiarrangement& m) {
        const ExponentResult er = exponents(m);
        const bool saito = saito_verify(er.theta1, er.theta2, m);
        if (json_) {
            emit({{"command", "exponents"}, {"d1", er.exponents.d1}, {"d2", er.exponents.d2}, {"theta1", er.theta1.to_string()},
                  {"theta2", er.theta2.to_string()}, {"saito", saito}});
        } else {
            out_ << "exp = (" << er.exponents.d1 << "," << er.exponents.d2 << ")\n";
            out_ << "theta1 = " << er.theta1.to_string() << "\n";
            out_ << "theta2 = " << er.theta2.to_string() << "\n";
        }
        if (!saito) throw InvariantViolation("exponent witnesses fail Saito's criterion");
        return kExitOk;
    }

    int exponents_marr() { return print_exponents(load_multiarrangement(opt_.path)); }

    int exponents_arr(const Arrangement& a) { return print_exponents(ziegler_restriction(a, parse_target(opt_.target, a))); }

    int free_cmd(const Arrangement& a) {
        const FreenessCertificate c = decide_free(a, parse_target(opt_.target, a));
        const std::string exp = "(" + std::to_string(c.exponents.d1) + "," + std::to_string(c.exponents.d2) + ")";
        if (json_) {
            emit({{"command", "free"}, {"verdict", c.is_free() ? "free" : "not_free"}, {"d1", c.exponents.d1}, {"d2", c.exponents.d2},
                  {"b2", c.b2}, {"target", c.target.to_string()}});
        } else if (c.is_free()) {
            out_ << "free, exp = " << exp << "\n";
            out_ << "b2 = " << c.b2 << " = d1 d2, target = " << c.target.to_string() << "\n";
        } else {
            out_ << "not free, b2 = " << c.b2 << " > d1 d2 = " << c.product() << "\n";
            out_ << "restriction exp = " << exp << ", target = " << c.target.to_string() << "\n";
        }
        return kExitOk;
    }

    void print_entries(const std::vector<CriterionEntry>& entries) {
        for (const auto& e : entries) {
            if (json_) emit(entry_json(e));
            else out_ << entry_text(e) << "\n";
        }
    }

    int criteria(const Arrangement& a) {
        std::optional<Arrangement> sub;
        if (!opt_.sub.empty()) sub = sub_of(a);
        print_entries(all_criteria(a, sub).entries);
        return kExitOk;
    }

    int pair(const Arrangement& a) {
        if (opt_.line_index >= a.size()) throw UsageError("line index " + std::to_string(opt_.line_index) + " out of range");
        print_entries({criterion_deletion_pair(a, opt_.line_index), criterion_addition(a, opt_.line_index)});
        return kExitOk;
    }

    int order(const Arrangement& a) {
        const Arrangement b = opt_.sub.empty() ? Arrangement(a.field()) : sub_of(a);
        const auto steps = order_increasing(a, b);
        if (json_) {
            json arr = json::array();
            for (const auto& s : steps) arr.push_back({{"index", s.index}, {"count", s.count}});
            emit({{"command", "order"}, {"steps", arr}});
        } else {
            for (const auto& s : steps) out_ << s.index << " " << s.count << "\n";
        }
        return kExitOk;
    }

    int fq_count(const Arrangement& a) {
        const std::int64_t n = complement_count(a);
        const std::int64_t p = a.field().modulus();
        if (json_)
            emit({{"command", "fq-count"}, {"complement", n}, {"p", p}, {"chi_p", a.char_poly()(p)}, {"ok", true}});
        else
            out_ << "complement = " << n << ", chi(" << p << ") = " << a.char_poly()(p) << ", OK\n";
        return kExitOk;
    }

    int fq_spectrum(const Arrangement& a) {
        const LineSpectrum s = line_spectrum(a);
        if (json_) {
            emit({{"command", "fq-spectrum"}, {"members", pairs_json(s.members)}, {"externals", pairs_json(s.externals)}, {"all", pairs_json(s.all)}});
        } else {
            out_ << "members\n" << pairs_text(s.members) << "externals\n" << pairs_text(s.externals) << "all\n" << pairs_text(s.all);
        }
        return kExitOk;
    }

    int verify(const Arrangement& a) {
        CharPoly claimed = a.char_poly();
        claimed.b2 += opt_.corrupt_b2;
        const VerifyReport rep = verify_suite(a, claimed);
        if (json_) {
            emit({{"command", "verify"}, {"checked", rep.checked}, {"violations", rep.violations}, {"ok", rep.ok()}});
        } else {
            for (const auto& c : rep.checked) out_ << "checked " << c << "\n";
            for (const auto& v : rep.violations) out_ << "violation: " << v << "\n";
            out_ << (rep.ok() ? "OK" : "FAILED") << "\n";
        }
        return rep.ok() ? kExitOk : kExitInvariant;
    }

    const Options& opt_;
    std::ostream& out_;
    bool json_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Exact freeness computations for affine line arrangements", "freearr"};
    app.require_subcommand(1);
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));

    struct Spec {
        const char* name;
        const char* help;
        bool target, sub, index;
    };
    const Spec specs[] = {
        {"chi", "Characteristic polynomial", false, false, false},
        {"roots", "Roots of the characteristic polynomial", false, false, false},
        {"spectrum", "Histogram of |A ∩ L| over members and test lines", false, false, false},
        {"ziegler", "Ziegler restriction as a .marr file", true, false, false},
        {"exponents", "Exponents of a .marr file or of a Ziegler restriction", true, false, false},
        {"free", "Exact freeness decision", true, false, false},
        {"criteria", "Every freeness criterion", false, true, false},
        {"pair", "Deletion pair and addition criteria for one line", false, false, true},
        {"order", "Greedy ordering of the lines outside --sub", false, true, false},
        {"fq-count", "Complement point count over F_p", false, false, false},
        {"fq-spectrum", "Histogram of |A ∩ L| over all lines of F_p^2", false, false, false},
        {"verify", "Full invariant suite", false, false, false},
    };
    for (const auto& s : specs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("file", opt.path, "Input .arr file")->required();
        if (s.index) sc->add_option("line", opt.line_index, "Line index")->required();
        if (s.target) sc->add_option("--target", opt.target, "infinity or member:<i>");
        if (s.sub) sc->add_option("--sub", opt.sub, "Comma-separated line indices");
        sc->add_option("--prime", opt.prime, "Reduce a rational input modulo this prime");
        sc->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
        if (std::string(s.name) == "verify") sc->add_option("--corrupt-b2", opt.corrupt_b2)->group("");
        sc->callback([&opt, name = std::string(s.name)] { opt.command = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (opt.prime != 0 && !is_prime(opt.prime)) throw UsageError("--prime " + std::to_string(opt.prime) + " is not prime");
        return Runner(opt, out).run();
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ParseError& e) {
        err << opt.path << ":" << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace freearr::cli
