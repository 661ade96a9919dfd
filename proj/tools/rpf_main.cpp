// Command-line front end for the recursive-prime-factorization toolkit.
//
// Exit codes: 0 success, 1 usage, 2 domain error, 3 budget/cap exceeded.
// Errors are printed to stderr as one line: "ERROR <Code>: <detail>".

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpf/analysis.hpp"
#include "rpf/compress.hpp"
#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"
#include "rpf/factorize.hpp"
#include "rpf/natural_interp.hpp"
#include "rpf/numeric.hpp"
#include "rpf/permuted.hpp"
#include "rpf/primes.hpp"
#include "rpf/rational_interp.hpp"
#include "rpf/report_json.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string alphabet = "parens";
    std::uint64_t max_bits = 1'000'000;
    bool json_out = false;
    bool print_den = false;

    bool binary() const { return alphabet == "binary"; }
    rpf::EvalBudget budget() const { return rpf::EvalBudget(max_bits); }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string from_alias(const Options& opt, std::string_view s) {
    if (s == "EPSILON") return "";
    std::string out(s);
    if (opt.binary())
        for (char& c : out) {
            if (c == '1') c = '(';
            else if (c == '0') c = ')';
        }
    return out;
}

std::string expr_alias(const Options& opt, std::string_view s) {
    std::string out(s);
    if (opt.binary())
        for (char& c : out) {
            if (c == '(') c = '1';
            else if (c == ')') c = '0';
        }
    return out;
}

std::string to_alias(const Options& opt, std::string_view s) {
    if (s.empty()) return "EPSILON";
    return expr_alias(opt, s);
}

rpf::DyckWord parse_word(const Options& opt, const std::string& item) {
    return rpf::DyckWord::parse(from_alias(opt, item));
}

rpf::PrimePermutation load_permutation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rpf::Error(rpf::errc::domain_error, "cannot open permutation file '" + path + "'");
    std::string line;
    std::getline(in, line);
    return rpf::PrimePermutation::parse(line);
}

/// Resolves the positional value, falling back to tokens CLI11 set aside
/// (negative rationals such as -2/9 look like options to the parser).
std::string resolve_value(CLI::App* cmd, CLI::App* root, std::string& positional) {
    std::vector<std::string> extras = cmd->remaining();
    for (const std::string& s : root->remaining()) extras.push_back(s);
    std::erase(extras, "--");
    if (positional.empty()) {
        if (extras.size() == 1) return extras[0];
        if (extras.empty()) throw UsageError("missing value argument for '" + cmd->get_name() + "'");
    } else if (extras.empty()) {
        return positional;
    }
    throw UsageError("unexpected arguments for '" + cmd->get_name() + "'");
}

std::vector<std::string> gather_items(const std::string& value) {
    if (value != "-") return {value};
    std::vector<std::string> items;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        items.push_back(line);
    }
    return items;
}

/// Runs the per-item handler over the argument (or stdin lines for "-"),
/// printing plain lines or one JSON document.
int run_items(const Options& opt, const std::string& command, const std::string& value,
              const std::function<std::string(const std::string&)>& handler) {
    std::vector<std::string> items = gather_items(value);
    json results = json::array();
    for (const std::string& item : items) {
        std::string out = handler(item);
        if (opt.json_out)
            results.push_back({{"input", item}, {"output", out}});
        else
            std::cout << out << "\n";
    }
    if (opt.json_out) std::cout << json{{"command", command}, {"results", results}}.dump(2) << "\n";
    return 0;
}

int emit_report(const Options& opt, const rpf::Report& report) {
    if (opt.json_out)
        std::cout << rpf::to_json(report).dump(2) << "\n";
    else
        std::cout << rpf::to_text(report);
    return 0;
}

void forbid_binary(const Options& opt, const std::string& what) {
    if (opt.binary())
        throw UsageError("--alphabet binary cannot be combined with " + what +
                         " (hex run numerals use 0 and 1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyck-word numeral systems based on recursive prime factorization"};
    app.require_subcommand(1);
    app.allow_extras();

    Options opt;
    auto add_globals = [&opt](CLI::App* a) {
        a->add_option("--alphabet", opt.alphabet, "Word alphabet: parens or binary ('1'='(', '0'=')')")
            ->check(CLI::IsMember({"parens", "binary"}));
        a->add_option("--max-bits", opt.max_bits, "Bit budget for evaluation intermediates")
            ->check(CLI::Range(std::uint64_t(64), std::uint64_t(1'000'000'000)));
        a->add_flag("--json", opt.json_out, "Emit a single JSON document instead of plain lines");
    };
    add_globals(&app);

    // encode
    auto* encode = app.add_subcommand("encode", "Number -> word");
    std::string encode_value;
    bool encode_rational = false;
    std::string encode_perm;
    encode->add_option("number", encode_value, "Decimal natural, or num/den with --rational; '-' reads stdin");
    encode->add_flag("--rational", encode_rational, "Encode a rational (num/den or integer)");
    encode->add_option("--perm", encode_perm, "Permutation file for a permuted natural spelling");
    encode->allow_extras();
    add_globals(encode);

    // decode
    auto* decode = app.add_subcommand("decode", "Word -> number");
    std::string decode_value;
    bool decode_rational = false;
    std::string decode_perm;
    decode->add_option("word", decode_value, "Dyck word (EPSILON for the empty word); '-' reads stdin");
    decode->add_flag("--rational", decode_rational, "Decode as a rational");
    decode->add_option("--perm", decode_perm, "Permutation file for a permuted evaluation");
    decode->add_flag("--print-den", opt.print_den, "Always print the denominator, even when 1");
    decode->allow_extras();
    add_globals(decode);

    auto add_word_cmd = [&](const char* name, const char* desc, std::string& value) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("word", value, "Input; '-' reads stdin");
        cmd->allow_extras();
        add_globals(cmd);
        return cmd;
    };

    std::string validate_value, collapse_value, dinf_value, succ_value, factorize_value, compress_value,
        decompress_value, convert_value;
    auto* validate_cmd = add_word_cmd("validate", "Classify a string: minimal | quasiminimal | dyck | invalid", validate_value);
    auto* collapse_cmd = add_word_cmd("collapse", "Deflate a word to its minimal equivalent", collapse_value);
    auto* dinf_cmd = add_word_cmd("dinf", "Inflationary degree of a word", dinf_value);
    auto* succ_cmd = add_word_cmd("succ", "Successor of a minimal word", succ_value);
    auto* factorize_cmd = add_word_cmd("factorize", "Prime factorization expression of a minimal word", factorize_value);
    bool factorize_compressed_flag = false;
    factorize_cmd->add_flag("--compressed", factorize_compressed_flag, "Operate on run-length-compressed tokens");
    auto* compress_cmd = add_word_cmd("compress", "Run-length compress a word", compress_value);
    auto* decompress_cmd = add_word_cmd("decompress", "Expand run-length tokens to a word", decompress_value);
    auto* convert_cmd = add_word_cmd("convert", "Respell a minimal word between permuted interpretations", convert_value);
    std::string convert_from, convert_to;
    convert_cmd->add_option("--from", convert_from, "Source permutation file")->required();
    convert_cmd->add_option("--to", convert_to, "Target permutation file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Enumeration and conjecture checks");
    analyze->require_subcommand(1);
    auto* counts_cmd = analyze->add_subcommand("counts", "Minimal-word counts per semilength vs A082582");
    std::size_t counts_max = 13;
    std::size_t counts_cap = 16;
    counts_cmd->add_option("--max", counts_max, "Largest semilength to count")->capture_default_str();
    counts_cmd->add_option("--cap", counts_cap, "Enumeration cap")->capture_default_str();
    add_globals(counts_cmd);
    auto* stripes_cmd = analyze->add_subcommand("stripes", "Members of the stripe of a given semilength");
    std::size_t stripes_k = 4;
    stripes_cmd->add_option("--k", stripes_k, "Stripe semilength")->capture_default_str();
    add_globals(stripes_cmd);
    auto* grammar_cmd = analyze->add_subcommand("grammar", "Candidate grammar vs pattern membership");
    std::size_t grammar_cap = 8;
    grammar_cmd->add_option("--cap", grammar_cap, "Semilength cap for the comparison")->capture_default_str();
    add_globals(grammar_cmd);
    auto* patterns_cmd = analyze->add_subcommand("stripe-patterns", "First/last member patterns of stripes");
    std::size_t patterns_max = 5;
    patterns_cmd->add_option("--max", patterns_max, "Largest stripe semilength")->capture_default_str();
    add_globals(patterns_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR Usage: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*encode) {
            if (encode_rational && !encode_perm.empty())
                throw UsageError("--rational cannot be combined with --perm");
            std::optional<rpf::PrimePermutation> sigma;
            if (!encode_perm.empty()) sigma = load_permutation(encode_perm);
            std::string value = resolve_value(encode, &app, encode_value);
            return run_items(opt, "encode", value, [&](const std::string& item) {
                if (encode_rational) return to_alias(opt, rpf::spell_rat(rpf::Rational::parse(item)).str());
                rpf::Natural n = rpf::natural_from_string(item);
                rpf::DyckWord w = sigma ? rpf::spell_nat_perm(n, *sigma) : rpf::spell_nat(n);
                return to_alias(opt, w.str());
            });
        }
        if (*decode) {
            if (decode_rational && !decode_perm.empty())
                throw UsageError("--rational cannot be combined with --perm");
            std::optional<rpf::PrimePermutation> sigma;
            if (!decode_perm.empty()) sigma = load_permutation(decode_perm);
            std::string value = resolve_value(decode, &app, decode_value);
            return run_items(opt, "decode", value, [&](const std::string& item) {
                rpf::DyckWord w = parse_word(opt, item);
                if (decode_rational) return rpf::eval_rat(w, opt.budget()).str(opt.print_den);
                rpf::Natural n = sigma ? rpf::eval_nat_perm(w, *sigma, opt.budget()) : rpf::eval_nat(w, opt.budget());
                return n.get_str();
            });
        }
        if (*validate_cmd) {
            std::string value = resolve_value(validate_cmd, &app, validate_value);
            return run_items(opt, "validate", value, [&](const std::string& item) -> std::string {
                rpf::DyckWord w;
                try {
                    w = parse_word(opt, item);
                } catch (const rpf::Error&) {
                    return "invalid";
                }
                if (rpf::is_minimal(w)) return "minimal";
                if (rpf::is_quasiminimal(w)) return "quasiminimal";
                return "dyck";
            });
        }
        if (*collapse_cmd) {
            std::string value = resolve_value(collapse_cmd, &app, collapse_value);
            return run_items(opt, "collapse", value, [&](const std::string& item) {
                return to_alias(opt, rpf::collapse(parse_word(opt, item)).str());
            });
        }
        if (*dinf_cmd) {
            std::string value = resolve_value(dinf_cmd, &app, dinf_value);
            return run_items(opt, "dinf", value, [&](const std::string& item) {
                return std::to_string(rpf::dinf(parse_word(opt, item)));
            });
        }
        if (*succ_cmd) {
            std::string value = resolve_value(succ_cmd, &app, succ_value);
            return run_items(opt, "succ", value, [&](const std::string& item) {
                return to_alias(opt, rpf::succ(parse_word(opt, item), opt.budget()).str());
            });
        }
        if (*factorize_cmd) {
            std::string value = resolve_value(factorize_cmd, &app, factorize_value);
            if (factorize_compressed_flag) {
                forbid_binary(opt, "--compressed");
                return run_items(opt, "factorize", value, [&](const std::string& item) {
                    std::string text = item == "EPSILON" ? "" : item;
                    return rpf::factorize_compressed(rpf::CompressedWord::parse(text));
                });
            }
            return run_items(opt, "factorize", value, [&](const std::string& item) {
                return expr_alias(opt, rpf::factorize_dyck(parse_word(opt, item)));
            });
        }
        if (*compress_cmd) {
            forbid_binary(opt, "compress");
            std::string value = resolve_value(compress_cmd, &app, compress_value);
            return run_items(opt, "compress", value, [&](const std::string& item) {
                std::string text = rpf::compress(parse_word(opt, item)).str();
                return text.empty() ? std::string("EPSILON") : text;
            });
        }
        if (*decompress_cmd) {
            forbid_binary(opt, "decompress");
            std::string value = resolve_value(decompress_cmd, &app, decompress_value);
            return run_items(opt, "decompress", value, [&](const std::string& item) {
                std::string text = item == "EPSILON" ? "" : item;
                rpf::DyckWord w = rpf::decompress(rpf::CompressedWord::parse(text));
                return w.empty() ? std::string("EPSILON") : w.str();
            });
        }
        if (*convert_cmd) {
            rpf::PrimePermutation sigma = load_permutation(convert_from);
            rpf::PrimePermutation tau = load_permutation(convert_to);
            std::string value = resolve_value(convert_cmd, &app, convert_value);
            return run_items(opt, "convert", value, [&](const std::string& item) {
                return to_alias(opt, rpf::convert_spelling(parse_word(opt, item), sigma, tau, opt.budget()).str());
            });
        }
        if (*counts_cmd) return emit_report(opt, rpf::counts_report(counts_max, counts_cap));
        if (*grammar_cmd) return emit_report(opt, rpf::grammar_check(grammar_cap));
        if (*patterns_cmd) return emit_report(opt, rpf::check_stripe_patterns(patterns_max, opt.budget()));
        if (*stripes_cmd) {
            rpf::Stripe s = rpf::stripe(stripes_k, opt.budget());
            rpf::Report r;
            r.check = "stripe";
            r.parameters.emplace_back("k", std::to_string(stripes_k));
            r.data.emplace_back("size", std::to_string(s.members.size()));
            std::string members;
            for (std::size_t i = 0; i < s.members.size(); ++i) {
                if (i) members += ",";
                members += s.members[i].get_str();
            }
            r.data.emplace_back("members", members);
            return emit_report(opt, r);
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "ERROR Usage: " << e.what() << "\n";
        return 1;
    } catch (const rpf::Error& e) {
        std::cerr << "ERROR " << rpf::errc_name(e.code()) << ": " << e.what() << "\n";
        return e.code() == rpf::errc::budget_exceeded || e.code() == rpf::errc::cap_exceeded ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal: " << e.what() << "\n";
        return 2;
    }
}
