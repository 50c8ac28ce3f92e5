#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "worldbench/errors.hpp"
#include "worldbench/worlds_lib.hpp"

namespace wb {

namespace {

struct Token {
    std::string text;
    std::size_t column = 1;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

struct PendingTransition {
    std::size_t line;
    std::size_t column;
    std::string from;
    std::string letter;
    std::string to;
    bool has_prob = false;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
};

// "3/4" or "1"; must be a rational in (0, 1].
std::pair<std::uint64_t, std::uint64_t> parse_rational(const Token& tok, std::size_t line) {
    const std::string& s = tok.text;
    std::size_t slash = s.find('/');
    try {
        std::uint64_t num = std::stoull(slash == std::string::npos ? s : s.substr(0, slash));
        std::uint64_t den = slash == std::string::npos ? 1 : std::stoull(s.substr(slash + 1));
        if (den == 0 || num == 0 || num > den) {
            throw ParseError(ParseCode::bad_probability, line, tok.column,
                             "probability must be a rational in (0, 1]");
        }
        return {num, den};
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(ParseCode::bad_probability, line, tok.column,
                         "cannot parse probability '" + s + "'");
    }
}

}  // namespace

ParsedWorld parse_world(std::string_view text) {
    std::istringstream input{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    std::optional<Alphabet> sigma, omega;
    std::vector<std::string> good_letters, bad_letters;
    bool saw_good = false, saw_bad = false;
    std::optional<std::string> start_name;
    std::size_t start_line = 0, start_col = 0;
    std::vector<std::string> state_names;
    std::vector<Symbol> views;
    std::map<std::string, State> state_index;
    std::vector<PendingTransition> pending;

    auto need = [&](const std::vector<Token>& tokens, std::size_t count, const char* usage) {
        if (tokens.size() < count) {
            throw ParseError(ParseCode::bad_directive, line_no, tokens.front().column,
                             std::string("expected '") + usage + "'");
        }
    };

    while (std::getline(input, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0].text;
        if (head == "sigma" || head == "omega") {
            auto& slot = head == "sigma" ? sigma : omega;
            if (slot) {
                throw ParseError(ParseCode::duplicate_alphabet, line_no, tokens[0].column,
                                 "'" + head + "' declared twice");
            }
            need(tokens, 2, (head + " <letters...>").c_str());
            std::vector<std::string> letters;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                for (const auto& prev : letters) {
                    if (prev == tokens[i].text) {
                        throw ParseError(ParseCode::duplicate_letter, line_no, tokens[i].column,
                                         "duplicate letter '" + tokens[i].text + "'");
                    }
                }
                letters.push_back(tokens[i].text);
            }
            slot = Alphabet(std::move(letters));
        } else if (head == "good" || head == "bad") {
            if (!sigma) {
                throw ParseError(ParseCode::missing_section, line_no, tokens[0].column,
                                 "'" + head + "' must follow the sigma declaration");
            }
            bool& seen = head == "good" ? saw_good : saw_bad;
            if (seen) {
                throw ParseError(ParseCode::duplicate_alphabet, line_no, tokens[0].column,
                                 "'" + head + "' declared twice");
            }
            seen = true;
            auto& letters = head == "good" ? good_letters : bad_letters;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (!sigma->find(tokens[i].text)) {
                    throw ParseError(ParseCode::unknown_letter, line_no, tokens[i].column,
                                     "letter '" + tokens[i].text + "' is not in sigma");
                }
                letters.push_back(tokens[i].text);
            }
        } else if (head == "start") {
            need(tokens, 2, "start <state>");
            if (start_name) {
                throw ParseError(ParseCode::duplicate_state, line_no, tokens[0].column,
                                 "'start' declared twice");
            }
            start_name = tokens[1].text;
            start_line = line_no;
            start_col = tokens[1].column;
        } else if (head == "state") {
            need(tokens, 4, "state <name> view <letter>");
            if (tokens[2].text != "view") {
                throw ParseError(ParseCode::bad_directive, line_no, tokens[2].column,
                                 "expected 'state <name> view <letter>'");
            }
            if (!sigma) {
                throw ParseError(ParseCode::missing_section, line_no, tokens[0].column,
                                 "states must follow the sigma declaration");
            }
            if (state_index.count(tokens[1].text)) {
                throw ParseError(ParseCode::duplicate_state, line_no, tokens[1].column,
                                 "state '" + tokens[1].text + "' declared twice");
            }
            auto view = sigma->find(tokens[3].text);
            if (!view) {
                throw ParseError(ParseCode::unknown_letter, line_no, tokens[3].column,
                                 "view letter '" + tokens[3].text + "' is not in sigma");
            }
            state_index.emplace(tokens[1].text, State(state_names.size()));
            state_names.push_back(tokens[1].text);
            views.push_back(*view);
        } else if (head == "on") {
            need(tokens, 5, "on <state> <omega-letter> -> <state> [p=<rational>]");
            if (tokens[3].text != "->") {
                throw ParseError(ParseCode::bad_directive, line_no, tokens[3].column,
                                 "expected '->'");
            }
            PendingTransition t;
            t.line = line_no;
            t.column = tokens[0].column;
            t.from = tokens[1].text;
            t.letter = tokens[2].text;
            t.to = tokens[4].text;
            if (tokens.size() > 5) {
                if (tokens[5].text.rfind("p=", 0) != 0) {
                    throw ParseError(ParseCode::bad_directive, line_no, tokens[5].column,
                                     "expected 'p=<rational>'");
                }
                Token prob{tokens[5].text.substr(2), tokens[5].column + 2};
                auto [num, den] = parse_rational(prob, line_no);
                t.has_prob = true;
                t.num = num;
                t.den = den;
            }
            pending.push_back(std::move(t));
        } else {
            throw ParseError(ParseCode::bad_directive, line_no, tokens[0].column,
                             "unknown directive '" + head + "'");
        }
    }

    if (!sigma) throw ParseError(ParseCode::missing_section, line_no, 1, "missing 'sigma'");
    if (!omega) throw ParseError(ParseCode::missing_section, line_no, 1, "missing 'omega'");
    if (state_names.empty()) {
        throw ParseError(ParseCode::missing_section, line_no, 1, "no states declared");
    }
    if (!start_name) throw ParseError(ParseCode::missing_section, line_no, 1, "missing 'start'");
    auto start_it = state_index.find(*start_name);
    if (start_it == state_index.end()) {
        throw ParseError(ParseCode::unknown_state, start_line, start_col,
                         "start state '" + *start_name + "' is not declared");
    }

    std::vector<std::vector<Branch>> cells(state_names.size() * omega->size());
    std::vector<char> deterministic_cell(cells.size(), 0);
    for (const auto& t : pending) {
        auto from = state_index.find(t.from);
        if (from == state_index.end()) {
            throw ParseError(ParseCode::unknown_state, t.line, t.column,
                             "state '" + t.from + "' is not declared");
        }
        auto to = state_index.find(t.to);
        if (to == state_index.end()) {
            throw ParseError(ParseCode::unknown_state, t.line, t.column,
                             "state '" + t.to + "' is not declared");
        }
        auto letter = omega->find(t.letter);
        if (!letter) {
            throw ParseError(ParseCode::unknown_letter, t.line, t.column,
                             "action letter '" + t.letter + "' is not in omega");
        }
        std::size_t cell = std::size_t{from->second} * omega->size() + *letter;
        if (!cells[cell].empty() && (deterministic_cell[cell] || !t.has_prob)) {
            throw ParseError(ParseCode::duplicate_transition, t.line, t.column,
                             "second transition for state '" + t.from + "' on '" + t.letter +
                                 "' (weighted lines need p=)");
        }
        deterministic_cell[cell] = !t.has_prob;
        std::uint64_t g = std::gcd(t.num, t.den);
        cells[cell].push_back(Branch{to->second, t.num / g, t.den / g});
    }
    for (State s = 0; s < state_names.size(); ++s) {
        for (Symbol a = 0; a < omega->size(); ++a) {
            std::size_t cell = std::size_t{s} * omega->size() + a;
            if (cells[cell].empty()) {
                throw ParseError(ParseCode::missing_transition, line_no, 1,
                                 "missing transition for state '" + state_names[s] + "' on '" +
                                     omega->letter(a) + "'");
            }
            // exact sum check, surfaced as a parse diagnostic
            std::uint64_t den = 1;
            for (const auto& br : cells[cell]) den = br.den / std::gcd(den, br.den) * den;
            std::uint64_t sum = 0;
            for (const auto& br : cells[cell]) sum += br.num * (den / br.den);
            if (sum != den) {
                throw ParseError(ParseCode::probability_sum, line_no, 1,
                                 "probabilities for state '" + state_names[s] + "' on '" +
                                     omega->letter(a) + "' do not sum to 1");
            }
        }
    }

    ParsedWorld result;
    result.world = WorldDef(*sigma, *omega, state_names, views, std::move(cells),
                            start_it->second);
    result.meaning = MeaningOfLife(*sigma, good_letters, bad_letters);
    result.good_letters = std::move(good_letters);
    result.bad_letters = std::move(bad_letters);
    return result;
}

ParsedWorld load_world_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open world file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_world(buffer.str());
}

std::string print_world(const ParsedWorld& parsed) {
    const WorldDef& w = parsed.world;
    std::ostringstream os;
    auto letters_line = [&](const char* head, const std::vector<std::string>& letters) {
        os << head;
        for (const auto& l : letters) os << " " << l;
        os << "\n";
    };
    letters_line("sigma", w.sigma().letters());
    letters_line("omega", w.omega().letters());
    letters_line("good", parsed.good_letters);
    letters_line("bad", parsed.bad_letters);
    os << "start " << w.state_name(w.start()) << "\n";
    for (State s = 0; s < w.state_count(); ++s) {
        os << "state " << w.state_name(s) << " view " << w.sigma().letter(w.view(s)) << "\n";
    }
    for (State s = 0; s < w.state_count(); ++s) {
        for (Symbol a = 0; a < w.omega().size(); ++a) {
            const auto& branches = w.branches(s, a);
            for (const auto& br : branches) {
                os << "on " << w.state_name(s) << " " << w.omega().letter(a) << " -> "
                   << w.state_name(br.target);
                if (branches.size() > 1) {
                    os << " p=" << br.num;
                    if (br.den != 1) os << "/" << br.den;
                }
                os << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace wb
