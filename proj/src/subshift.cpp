#include <symdyn/subshift.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace symdyn {

const char* kind_name(SubshiftKind k) {
    switch (k) {
    case SubshiftKind::substitution: return "substitution";
    case SubshiftKind::sturmian: return "sturmian";
    case SubshiftKind::sft: return "sft";
    case SubshiftKind::periodic_seed: return "periodic_seed";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void sort_unique(std::vector<Word>& words, const Alphabet& alphabet) {
    std::sort(words.begin(), words.end(),
              [&](const Word& a, const Word& b) { return alphabet.word_less(a, b); });
    words.erase(std::unique(words.begin(), words.end()), words.end());
}

std::vector<Word> windows_of(const Word& text, int n) {
    std::vector<Word> out;
    if (n <= 0 || text.size() < static_cast<std::size_t>(n))
        return out;
    out.reserve(text.size() - n + 1);
    for (std::size_t i = 0; i + n <= text.size(); ++i)
        out.push_back(text.substr(i, static_cast<std::size_t>(n)));
    return out;
}

Word apply_substitution(const std::map<char, Word>& rules, const Word& w,
                        std::size_t max_text_length) {
    Word out;
    for (char c : w) {
        auto it = rules.find(c);
        if (it == rules.end())
            throw std::logic_error(std::string("no substitution rule for '") + c + "'");
        out += it->second;
        if (out.size() > max_text_length)
            throw ResourceCapError("substitution text exceeds the configured cap");
    }
    return out;
}

} // namespace

bool substitution_is_primitive(const Alphabet& alphabet, const std::map<char, Word>& rules) {
    const int n = alphabet.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        auto it = rules.find(alphabet.symbol(i));
        if (it == rules.end())
            return false;
        for (char c : it->second)
            reach[i][alphabet.rank(c)] = true;
    }
    // Wielandt bound: a primitive n x n nonnegative matrix has a positive
    // power of exponent at most (n-1)^2 + 1.
    auto all_positive = [&](const std::vector<std::vector<bool>>& m) {
        for (const auto& row : m)
            for (bool b : row)
                if (!b)
                    return false;
        return true;
    };
    std::vector<std::vector<bool>> cur = reach;
    int bound = (n - 1) * (n - 1) + 1;
    for (int step = 1; step <= bound; ++step) {
        if (all_positive(cur))
            return true;
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (cur[i][k])
                    for (int j = 0; j < n; ++j)
                        if (reach[k][j])
                            next[i][j] = true;
        cur = std::move(next);
    }
    return false;
}

SubshiftSpec parse_spec(const std::string& text) {
    struct Field {
        int line;
        std::string body;
    };
    std::vector<Field> fields;
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos)
                line.resize(hash);
            std::size_t start = 0;
            while (start <= line.size()) {
                std::size_t semi = line.find(';', start);
                std::string piece = semi == std::string::npos ? line.substr(start)
                                                              : line.substr(start, semi - start);
                piece = trim(piece);
                if (!piece.empty())
                    fields.push_back({lineno, piece});
                if (semi == std::string::npos)
                    break;
                start = semi + 1;
            }
        }
    }

    std::optional<SubshiftKind> kind;
    std::optional<std::string> alphabet_line;
    std::vector<std::pair<char, Word>> rule_list;
    std::optional<char> seed;
    std::vector<int> cf;
    std::vector<Word> forbidden;
    std::optional<Word> generator;
    int kind_line = 0;

    for (const auto& f : fields) {
        std::size_t arrow = f.body.find("->");
        std::size_t eq = f.body.find('=');
        if (arrow != std::string::npos && (eq == std::string::npos || arrow < eq)) {
            std::string lhs = trim(f.body.substr(0, arrow));
            std::string rhs = trim(f.body.substr(arrow + 2));
            if (lhs.size() != 1)
                throw SpecParseError(f.line, "substitution rule left side must be one letter");
            if (rhs.empty())
                throw SpecParseError(f.line, "substitution rule image must be nonempty");
            for (const auto& r : rule_list)
                if (r.first == lhs[0])
                    throw SpecParseError(f.line, std::string("duplicate rule for '") + lhs[0] + "'");
            rule_list.emplace_back(lhs[0], rhs);
            continue;
        }
        if (eq == std::string::npos)
            throw SpecParseError(f.line, "expected key=value or letter->word");
        std::string key = trim(f.body.substr(0, eq));
        std::string value = trim(f.body.substr(eq + 1));
        if (key == "kind") {
            if (value == "substitution")
                kind = SubshiftKind::substitution;
            else if (value == "sturmian")
                kind = SubshiftKind::sturmian;
            else if (value == "sft")
                kind = SubshiftKind::sft;
            else if (value == "periodic_seed")
                kind = SubshiftKind::periodic_seed;
            else
                throw SpecParseError(f.line, "unknown kind '" + value + "'");
            kind_line = f.line;
        } else if (key == "alphabet") {
            if (value.empty())
                throw SpecParseError(f.line, "alphabet must be nonempty");
            alphabet_line = value;
        } else if (key == "seed") {
            if (value.size() != 1)
                throw SpecParseError(f.line, "seed must be one letter");
            seed = value[0];
        } else if (key == "cf") {
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = trim(tok);
                int a = 0;
                try {
                    std::size_t used = 0;
                    a = std::stoi(tok, &used);
                    if (used != tok.size())
                        throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw SpecParseError(f.line, "cf entries must be integers, got '" + tok + "'");
                }
                if (a < 1)
                    throw SpecParseError(f.line, "cf entries must be >= 1");
                cf.push_back(a);
            }
            if (cf.empty())
                throw SpecParseError(f.line, "cf list must be nonempty");
        } else if (key == "forbid") {
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = trim(tok);
                if (tok.empty())
                    throw SpecParseError(f.line, "forbidden words must be nonempty");
                forbidden.push_back(tok);
            }
        } else if (key == "generator") {
            if (value.empty())
                throw SpecParseError(f.line, "generator must be nonempty");
            generator = value;
        } else {
            throw SpecParseError(f.line, "unknown key '" + key + "'");
        }
    }

    if (!kind)
        throw SpecParseError(1, "missing kind=...");

    SubshiftSpec spec;
    spec.kind = *kind;
    spec.source_text = text;

    auto inferred_alphabet = [&](const std::string& letters) {
        std::string distinct;
        for (char c : letters)
            if (distinct.find(c) == std::string::npos)
                distinct += c;
        return distinct;
    };

    switch (*kind) {
    case SubshiftKind::substitution: {
        if (rule_list.empty())
            throw SpecParseError(kind_line, "substitution needs at least one rule");
        if (!seed)
            throw SpecParseError(kind_line, "substitution needs seed=<letter>");
        std::string letters;
        if (alphabet_line) {
            letters = *alphabet_line;
        } else {
            // declared order: rule letters first, then new image letters
            auto add = [&](char c) {
                if (letters.find(c) == std::string::npos)
                    letters += c;
            };
            for (const auto& r : rule_list)
                add(r.first);
            for (const auto& r : rule_list)
                for (char c : r.second)
                    add(c);
        }
        spec.alphabet = Alphabet(letters);
        for (const auto& r : rule_list) {
            if (!spec.alphabet.contains(r.first))
                throw SpecParseError(kind_line,
                                     std::string("rule letter '") + r.first + "' not in alphabet");
            try {
                spec.alphabet.require_word(r.second);
            } catch (const std::invalid_argument& e) {
                throw SpecParseError(kind_line, e.what());
            }
            spec.rules[r.first] = r.second;
        }
        for (char c : spec.alphabet.symbols())
            if (!spec.rules.count(c))
                throw SpecParseError(kind_line, std::string("no rule for letter '") + c + "'");
        if (!spec.alphabet.contains(*seed))
            throw SpecParseError(kind_line, "seed letter not in alphabet");
        spec.seed = *seed;
        spec.primitive = substitution_is_primitive(spec.alphabet, spec.rules);
        break;
    }
    case SubshiftKind::sturmian: {
        if (cf.empty())
            throw SpecParseError(kind_line, "sturmian needs cf=<ints>");
        if (alphabet_line && alphabet_line->size() != 2)
            throw SpecParseError(kind_line, "sturmian alphabet must be binary");
        spec.alphabet = Alphabet(alphabet_line ? *alphabet_line : "01");
        spec.cf = cf;
        break;
    }
    case SubshiftKind::sft: {
        if (forbidden.empty())
            throw SpecParseError(kind_line, "sft needs forbid=<words>");
        if (!alphabet_line)
            throw SpecParseError(kind_line, "sft needs an explicit alphabet=<letters>");
        spec.alphabet = Alphabet(*alphabet_line);
        for (const auto& w : forbidden)
            spec.alphabet.require_word(w);
        spec.forbidden = forbidden;
        break;
    }
    case SubshiftKind::periodic_seed: {
        if (!generator)
            throw SpecParseError(kind_line, "periodic_seed needs generator=<word>");
        spec.alphabet = Alphabet(alphabet_line ? *alphabet_line : inferred_alphabet(*generator));
        spec.alphabet.require_word(*generator);
        spec.generator = *generator;
        break;
    }
    }
    return spec;
}

SubshiftSpec make_thue_morse_spec() {
    return parse_spec("kind=substitution; 0->01; 1->10; seed=0");
}

SubshiftSpec make_fibonacci_spec(int cf_terms) {
    std::string s = "kind=sturmian; cf=";
    for (int i = 0; i < cf_terms; ++i)
        s += (i ? ",1" : "1");
    return parse_spec(s);
}

Language::Language(SubshiftSpec spec, Limits limits)
    : spec_(std::move(spec)), limits_(limits) {}

const std::vector<Word>& Language::factors(int n) {
    if (n < 1)
        throw std::invalid_argument("factors: level must be >= 1");
    auto it = levels_.find(n);
    if (it == levels_.end()) {
        it = levels_.emplace(n, enumerate(n)).first;
        horizon_ = std::max(horizon_, n);
    }
    return it->second;
}

bool Language::contains(int n, const Word& w) {
    const auto& lvl = factors(n);
    return std::binary_search(lvl.begin(), lvl.end(), w,
                              [&](const Word& a, const Word& b) {
                                  return spec_.alphabet.word_less(a, b);
                              });
}

std::vector<Word> Language::enumerate(int n) {
    std::vector<Word> out;
    switch (spec_.kind) {
    case SubshiftKind::substitution: out = substitution_level(n, 0); break;
    case SubshiftKind::sturmian: out = sturmian_level(n); break;
    case SubshiftKind::sft: out = sft_level(n); break;
    case SubshiftKind::periodic_seed: out = periodic_level(n); break;
    }
    if (out.size() > limits_.max_words)
        throw ResourceCapError("language level exceeds the configured word cap");
    return out;
}

void Language::grow_substitution_text(std::size_t min_length) {
    if (subst_text_.empty())
        subst_text_ = Word(1, spec_.seed);
    int iter = 0;
    while (subst_text_.size() < min_length) {
        Word next = apply_substitution(spec_.rules, subst_text_, limits_.max_text_length);
        if (next.size() <= subst_text_.size() && next == subst_text_)
            break; // substitution reached a fixed finite word
        subst_text_ = std::move(next);
        if (++iter > limits_.max_substitution_iterations)
            throw ResourceCapError("substitution did not reach the requested length");
    }
}

std::vector<Word> Language::substitution_level(int n, int extra_iterations) {
    grow_substitution_text(static_cast<std::size_t>(n));
    Word cur = subst_text_;
    std::vector<Word> prev_factors;
    bool have_prev = false;
    for (int iter = 0; iter <= limits_.max_substitution_iterations; ++iter) {
        if (cur.size() >= static_cast<std::size_t>(n)) {
            std::vector<Word> f = windows_of(cur, n);
            sort_unique(f, spec_.alphabet);
            if (have_prev && f == prev_factors) {
                for (int e = 0; e < extra_iterations; ++e) {
                    cur = apply_substitution(spec_.rules, cur, limits_.max_text_length);
                    f = windows_of(cur, n);
                    sort_unique(f, spec_.alphabet);
                }
                return f;
            }
            prev_factors = std::move(f);
            have_prev = true;
        }
        Word next = apply_substitution(spec_.rules, cur, limits_.max_text_length);
        if (next == cur)
            return prev_factors; // finite fixed word: its windows are all there is
        cur = std::move(next);
    }
    throw ResourceCapError("substitution factor set did not stabilize within the iteration cap");
}

std::vector<Word> Language::substitution_factors_with_extra_iterations(int n, int extra) {
    if (spec_.kind != SubshiftKind::substitution)
        throw std::logic_error("not a substitution subshift");
    return substitution_level(n, extra);
}

const Word& Language::sturmian_word() {
    if (sturmian_text_.empty()) {
        Word prev(1, spec_.alphabet.symbol(1)); // s_{-1} = "1"
        Word cur(1, spec_.alphabet.symbol(0));  // s_0  = "0"
        for (int a : spec_.cf) {
            Word next;
            next.reserve(cur.size() * static_cast<std::size_t>(a) + prev.size());
            for (int i = 0; i < a; ++i)
                next += cur;
            next += prev;
            if (next.size() > limits_.max_text_length)
                throw ResourceCapError("sturmian standard word exceeds the configured cap");
            prev = std::move(cur);
            cur = std::move(next);
        }
        sturmian_text_ = std::move(cur);
    }
    return sturmian_text_;
}

std::vector<Word> Language::sturmian_level(int n) {
    const Word& s = sturmian_word();
    std::size_t prefix = std::max<std::size_t>(2 * static_cast<std::size_t>(n), 16);
    for (;;) {
        prefix = std::min(prefix, s.size());
        std::vector<Word> f = windows_of(s.substr(0, prefix), n);
        sort_unique(f, spec_.alphabet);
        if (f.size() == static_cast<std::size_t>(n) + 1)
            return f;
        if (f.size() > static_cast<std::size_t>(n) + 1)
            throw std::logic_error("sturmian level exceeded n+1 words; enumeration bug");
        if (prefix == s.size()) {
            std::ostringstream msg;
            msg << "sturmian cf list too short: level " << n << " reached only " << f.size()
                << " of " << n + 1 << " words";
            throw SturmianDepthError(msg.str(), n);
        }
        prefix *= 2;
    }
}

void Language::ensure_sft_graph() {
    if (sft_)
        return;
    SftGraph g;
    int m = 0;
    for (const auto& f : spec_.forbidden)
        m = std::max(m, static_cast<int>(f.size()));
    g.m = m;
    if (m >= 2) {
        auto avoids = [&](const Word& w) {
            for (const auto& f : spec_.forbidden)
                if (w.size() >= f.size() && occurrences(f, w) > 0)
                    return false;
            return true;
        };
        // vertices: admissible (m-1)-words
        std::vector<Word> vs{Word()};
        for (int step = 0; step < m - 1; ++step) {
            std::vector<Word> next;
            for (const auto& v : vs)
                for (char c : spec_.alphabet.symbols()) {
                    Word w = v + c;
                    if (avoids(w))
                        next.push_back(std::move(w));
                }
            vs = std::move(next);
            if (vs.size() > limits_.max_words)
                throw ResourceCapError("sft vertex set exceeds the configured cap");
        }
        sort_unique(vs, spec_.alphabet);
        g.vertices = vs;
        auto vertex_id = [&](const Word& w) -> int {
            auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), w,
                                       [&](const Word& a, const Word& b) {
                                           return spec_.alphabet.word_less(a, b);
                                       });
            if (it == g.vertices.end() || *it != w)
                return -1;
            return static_cast<int>(it - g.vertices.begin());
        };
        g.next.resize(g.vertices.size());
        std::vector<std::vector<int>> prev(g.vertices.size());
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            for (char c : spec_.alphabet.symbols()) {
                Word full = g.vertices[i] + c;
                bool ok = true;
                for (const auto& f : spec_.forbidden)
                    if (f.size() == static_cast<std::size_t>(m) && full == f) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    continue;
                int j = vertex_id(full.substr(1));
                if (j >= 0) {
                    g.next[i].push_back(j);
                    prev[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
                }
            }
        }
        // keep vertices that sit on a bi-infinite path: iteratively drop
        // vertices with no successor (resp. predecessor)
        auto prune = [&](const std::vector<std::vector<int>>& out) {
            std::vector<char> alive(g.vertices.size(), 1);
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t i = 0; i < g.vertices.size(); ++i) {
                    if (!alive[i])
                        continue;
                    bool any = false;
                    for (int j : out[i])
                        if (alive[static_cast<std::size_t>(j)]) {
                            any = true;
                            break;
                        }
                    if (!any) {
                        alive[i] = 0;
                        changed = true;
                    }
                }
            }
            return alive;
        };
        std::vector<char> right_ok = prune(g.next);
        std::vector<char> left_ok = prune(prev);
        g.viable.resize(g.vertices.size());
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            g.viable[i] = right_ok[i] && left_ok[i];
        // store one-sided viability for level enumeration
        sft_right_ok_ = std::move(right_ok);
        sft_left_ok_ = std::move(left_ok);
    }
    sft_ = std::move(g);
}

std::vector<Word> Language::sft_level(int n) {
    ensure_sft_graph();
    const SftGraph& g = *sft_;
    std::vector<Word> out;
    if (g.m <= 1) {
        // forbidden single letters shrink the alphabet; the rest is a full shift
        std::string letters;
        for (char c : spec_.alphabet.symbols()) {
            bool banned = false;
            for (const auto& f : spec_.forbidden)
                if (f.size() == 1 && f[0] == c)
                    banned = true;
            if (!banned)
                letters += c;
        }
        if (letters.empty())
            return out;
        std::vector<Word> cur{Word()};
        for (int step = 0; step < n; ++step) {
            std::vector<Word> next;
            next.reserve(cur.size() * letters.size());
            for (const auto& w : cur)
                for (char c : letters)
                    next.push_back(w + c);
            cur = std::move(next);
            if (cur.size() > limits_.max_words)
                throw ResourceCapError("sft level exceeds the configured word cap");
        }
        return cur;
    }

    auto avoids_suffix = [&](const Word& w) {
        // only factors ending at the last letter are new
        for (const auto& f : spec_.forbidden)
            if (w.size() >= f.size() && w.compare(w.size() - f.size(), f.size(), f) == 0)
                return false;
        return true;
    };
    auto vertex_id = [&](const Word& w) -> int {
        auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), w,
                                   [&](const Word& a, const Word& b) {
                                       return spec_.alphabet.word_less(a, b);
                                   });
        if (it == g.vertices.end() || *it != w)
            return -1;
        return static_cast<int>(it - g.vertices.begin());
    };

    const int mm = g.m - 1;
    if (n >= mm) {
        // walk the transfer graph: first window left-extendable, last window
        // right-extendable, everything in between avoids the forbidden set
        std::vector<Word> stack;
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (sft_left_ok_[i])
                stack.push_back(g.vertices[i]);
        for (int len = mm; len < n; ++len) {
            std::vector<Word> next;
            for (const auto& w : stack)
                for (char c : spec_.alphabet.symbols()) {
                    Word x = w + c;
                    if (avoids_suffix(x))
                        next.push_back(std::move(x));
                }
            stack = std::move(next);
            if (stack.size() > limits_.max_words)
                throw ResourceCapError("sft level exceeds the configured word cap");
        }
        for (auto& w : stack) {
            int last = vertex_id(w.substr(w.size() - static_cast<std::size_t>(mm)));
            if (last >= 0 && sft_right_ok_[static_cast<std::size_t>(last)])
                out.push_back(std::move(w));
        }
        sort_unique(out, spec_.alphabet);
        return out;
    }

    // short levels: windows of the admissible (m-1)-words
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (g.viable[i]) {
            auto w = windows_of(g.vertices[i], n);
            out.insert(out.end(), w.begin(), w.end());
        }
    sort_unique(out, spec_.alphabet);
    return out;
}

std::vector<Word> Language::periodic_level(int n) const {
    Word ext = spec_.generator;
    while (ext.size() < spec_.generator.size() + static_cast<std::size_t>(n) - 1)
        ext += spec_.generator;
    ext.resize(spec_.generator.size() + static_cast<std::size_t>(n) - 1);
    std::vector<Word> out;
    for (std::size_t k = 0; k < spec_.generator.size(); ++k)
        out.push_back(ext.substr(k, static_cast<std::size_t>(n)));
    std::vector<Word> sorted = out;
    sort_unique(sorted, spec_.alphabet);
    return sorted;
}

const Word& Language::reference_prefix(std::size_t min_length) {
    if (reference_.size() >= min_length)
        return reference_;
    switch (spec_.kind) {
    case SubshiftKind::substitution:
        grow_substitution_text(min_length);
        reference_ = subst_text_;
        break;
    case SubshiftKind::sturmian:
        reference_ = sturmian_word();
        break;
    case SubshiftKind::periodic_seed: {
        reference_.clear();
        while (reference_.size() < min_length)
            reference_ += spec_.generator;
        break;
    }
    case SubshiftKind::sft: {
        ensure_sft_graph();
        const SftGraph& g = *sft_;
        reference_.clear();
        if (g.m <= 1) {
            Word level1 = factors(1).empty() ? Word() : factors(1).front();
            if (level1.empty())
                break;
            while (reference_.size() < min_length)
                reference_ += level1;
            break;
        }
        // lexicographically least bi-infinite walk, read off one letter at a time
        int cur = -1;
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (g.viable[i]) {
                cur = static_cast<int>(i);
                break;
            }
        if (cur < 0)
            break;
        reference_ = g.vertices[static_cast<std::size_t>(cur)];
        while (reference_.size() < min_length) {
            int chosen = -1;
            for (int j : g.next[static_cast<std::size_t>(cur)]) {
                if (!sft_right_ok_[static_cast<std::size_t>(j)])
                    continue;
                if (chosen < 0 ||
                    spec_.alphabet.word_less(g.vertices[static_cast<std::size_t>(j)],
                                             g.vertices[static_cast<std::size_t>(chosen)]))
                    chosen = j;
            }
            if (chosen < 0)
                break;
            reference_ += g.vertices[static_cast<std::size_t>(chosen)].back();
            cur = chosen;
        }
        break;
    }
    }
    return reference_;
}

AperiodicityReport is_aperiodic_up_to(Language& lang, int max_period, int window) {
    if (max_period < 1)
        throw std::invalid_argument("is_aperiodic_up_to: max period must be >= 1");
    if (window < 2 * max_period)
        throw std::invalid_argument("is_aperiodic_up_to: window must be >= 2 * max period");
    AperiodicityReport rep;
    rep.max_period = max_period;
    rep.window = window;
    for (int p = 1; p <= max_period; ++p) {
        for (const Word& v : lang.factors(p)) {
            Word periodic;
            while (periodic.size() < static_cast<std::size_t>(window))
                periodic += v;
            periodic.resize(static_cast<std::size_t>(window));
            if (lang.contains(window, periodic)) {
                rep.aperiodic = false;
                rep.witness = v;
                return rep;
            }
        }
    }
    return rep;
}

std::uint64_t text_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace symdyn
