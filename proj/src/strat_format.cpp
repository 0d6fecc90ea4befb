#include "stratum/strat_format.hpp"

#include <memory>
#include <sstream>

namespace stratum {

namespace {

bool valid_token(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
        if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_'))
            return false;
    return true;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
    fail("ParseError", "line " + std::to_string(line) + ": " + message);
}

} // namespace

StratFile parse_strat_file(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    int dim = -1;
    bool dim_seen = false;
    std::vector<std::vector<std::string>> facets;
    std::map<int, std::vector<std::vector<std::string>>> skeleton_facets;
    std::map<std::string, std::vector<std::pair<std::string, ExtInt>>> perversities;

    enum class Section { None, Facets, Skeleton, Perversity };
    Section section = Section::None;
    int cur_skeleton = 0;
    std::string cur_perversity;

    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        std::vector<std::string> tokens;
        std::string t;
        while (ls >> t) tokens.push_back(t);
        if (tokens.empty()) continue;

        if (tokens[0] == "dim") {
            if (tokens.size() != 2) parse_fail(line_no, "dim needs one integer");
            try {
                dim = std::stoi(tokens[1]);
            } catch (...) {
                parse_fail(line_no, "bad dimension: " + tokens[1]);
            }
            dim_seen = true;
            section = Section::None;
            continue;
        }
        if (tokens[0] == "facets") {
            if (tokens.size() != 1) parse_fail(line_no, "facets takes no arguments");
            section = Section::Facets;
            continue;
        }
        if (tokens[0] == "skeleton") {
            if (tokens.size() != 2 || tokens[1].empty() || tokens[1].back() != ':')
                parse_fail(line_no, "expected 'skeleton <i>:'");
            std::string num = tokens[1].substr(0, tokens[1].size() - 1);
            try {
                cur_skeleton = std::stoi(num);
            } catch (...) {
                parse_fail(line_no, "bad skeleton index: " + num);
            }
            skeleton_facets[cur_skeleton];
            section = Section::Skeleton;
            continue;
        }
        if (tokens[0] == "perversity") {
            if (tokens.size() != 2 || tokens[1].empty() || tokens[1].back() != ':')
                parse_fail(line_no, "expected 'perversity <name>:'");
            cur_perversity = tokens[1].substr(0, tokens[1].size() - 1);
            if (!valid_token(cur_perversity)) parse_fail(line_no, "bad perversity name");
            perversities[cur_perversity];
            section = Section::Perversity;
            continue;
        }

        switch (section) {
            case Section::Facets:
            case Section::Skeleton: {
                for (const auto& tok : tokens)
                    if (!valid_token(tok))
                        parse_fail(line_no, "bad vertex token: " + tok);
                if (section == Section::Facets) facets.push_back(tokens);
                else skeleton_facets[cur_skeleton].push_back(tokens);
                break;
            }
            case Section::Perversity: {
                if (tokens.size() != 2) parse_fail(line_no, "expected '<stratum-id> <value>'");
                ExtInt v;
                try {
                    v = ExtInt::parse(tokens[1]);
                } catch (const Error&) {
                    parse_fail(line_no, "bad perversity value: " + tokens[1]);
                }
                perversities[cur_perversity].push_back({tokens[0], v});
                break;
            }
            case Section::None:
                parse_fail(line_no, "unexpected content: " + tokens[0]);
        }
    }

    if (!dim_seen) fail("ParseError", "missing 'dim' line");
    if (facets.empty()) fail("ParseError", "missing 'facets' block");

    StratFile out;
    auto complex = std::make_shared<SimplicialComplex>(build_complex(facets));
    out.strat = build_stratification(complex, dim, skeleton_facets);
    for (const auto& [name, values] : perversities)
        out.perversities[name] = make_perversity(out.strat, values);
    return out;
}

std::string emit_strat_file(const Stratification& strat,
                            const std::map<std::string, Perversity>& perversities) {
    std::string out;
    out += "dim " + std::to_string(strat.formal_dim()) + "\n";
    out += "facets\n";
    const SimplicialComplex& x = strat.complex();
    for (const auto& f : x.facets()) {
        std::string line;
        for (const auto& l : x.labels_of(f)) line += (line.empty() ? "" : " ") + l;
        out += line + "\n";
    }
    // one block per level that carries a simplex
    for (int i = 0; i < strat.formal_dim(); ++i) {
        bool level_used = false;
        for (size_t id = 0; id < x.simplices().size(); ++id)
            if (strat.carrier_index_by_id(static_cast<int>(id)) == i) level_used = true;
        if (!level_used) continue;
        out += "skeleton " + std::to_string(i) + ":\n";
        for (const auto& f : strat.skeleton_facets(i)) {
            std::string line;
            for (const auto& l : x.labels_of(f)) line += (line.empty() ? "" : " ") + l;
            out += line + "\n";
        }
    }
    for (const auto& [name, p] : perversities) {
        out += "perversity " + name + ":\n";
        for (size_t i = 0; i < strat.strata().size(); ++i) {
            if (strat.strata()[i].regular) continue;
            out += strat.strata()[i].id + " " + p.values[i].to_string() + "\n";
        }
    }
    return out;
}

std::string content_digest(const std::string& text) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", h);
    return std::string(buf);
}

} // namespace stratum
