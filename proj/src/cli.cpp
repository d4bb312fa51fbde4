// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chargechain/harness.hpp"
#include "chargechain/ledger.hpp"

namespace chargechain::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

[[noreturn]] void fail(const std::string& what) { throw CliError(kValidationFailure, what); }

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string keystore;
    std::optional<std::uint64_t> seed;
    int verbosity = 0;
    std::unique_ptr<crypto::Rng> rng;

    crypto::Rng& random() {
        if (!rng) {
            if (seed) {
                rng = std::make_unique<crypto::SeededRng>(*seed);
            } else {
                rng = std::make_unique<crypto::SystemRng>();
            }
        }
        return *rng;
    }

    /// Key-store files resolve relative paths against the key-store directory.
    [[nodiscard]] fs::path key_path(const std::string& p) const {
        fs::path path(p);
        if (keystore.empty() || path.is_absolute()) return path;
        return fs::path(keystore) / path;
    }
};

// --- file helpers -----------------------------------------------------------------

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text, bool overwrite) {
    if (!overwrite && fs::exists(path)) {
        fail(path.string() + " already exists (use --force to overwrite)");
    }
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) fail("cannot write " + path.string());
}

json read_json(const fs::path& path, const char* what) {
    const std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("cannot parse ") + what + " " + path.string() + ": " + e.what());
    }
}

template <typename T>
T field_or_fail(const json& j, const char* name, const fs::path& path) {
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        fail("cannot parse " + path.string() + ": missing or invalid field '" + name + "'");
    }
}

crypto::Scalar scalar_field(const json& j, const char* name, const fs::path& path) {
    try {
        auto s = crypto::Scalar::from_bytes(from_hex(field_or_fail<std::string>(j, name, path)));
        if (s && !s->is_zero()) return *s;
    } catch (const DecodeError&) {
    }
    fail("cannot parse " + path.string() + ": field '" + name + "' is not a valid secret scalar");
}

crypto::Point point_field(const json& j, const char* name, const fs::path& path) {
    try {
        auto p = crypto::Point::from_bytes(from_hex(field_or_fail<std::string>(j, name, path)));
        if (p) return *p;
    } catch (const DecodeError&) {
    }
    fail("cannot parse " + path.string() + ": field '" + name + "' is not a valid group element");
}

struct UtilityKeys {
    credentials::UtilityKeyPair pbs;
    crypto::SigningKeyPair owner;
};

UtilityKeys load_utility(const fs::path& path) {
    const json j = read_json(path, "key file");
    if (!j.is_object() || j.value("role", "") != "utility") fail(path.string() + " is not a utility key file");
    UtilityKeys keys;
    keys.pbs.secret = scalar_field(j, "pbs_secret", path);
    keys.pbs.public_key = crypto::Point::base_mul(keys.pbs.secret);
    if (keys.pbs.public_key != point_field(j, "pbs_public", path)) {
        fail("cannot parse " + path.string() + ": pbs_public does not match pbs_secret");
    }
    keys.owner = crypto::SigningKeyPair::from_secret(scalar_field(j, "owner_secret", path));
    if (keys.owner.public_key != point_field(j, "owner_public", path)) {
        fail("cannot parse " + path.string() + ": owner_public does not match owner_secret");
    }
    return keys;
}

crypto::SigningKeyPair load_esu(const fs::path& path) {
    const json j = read_json(path, "key file");
    if (!j.is_object() || j.value("role", "") != "esu") fail(path.string() + " is not an ESU key file");
    auto keys = crypto::SigningKeyPair::from_secret(scalar_field(j, "secret", path));
    if (keys.public_key != point_field(j, "public", path)) {
        fail("cannot parse " + path.string() + ": public key does not match secret");
    }
    return keys;
}

credentials::Day date_or_fail(const std::string& text) {
    auto d = parse_date(text);
    if (!d) fail("invalid date '" + text + "', expected YYYY-MM-DD");
    return *d;
}

// --- chain helpers ------------------------------------------------------------------

ledger::Chain load_chain(const fs::path& path, bool must_exist) {
    if (!fs::exists(path)) {
        if (must_exist) fail("chain log " + path.string() + " does not exist");
        return {};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path.string());
    try {
        return ledger::Chain::load(ledger::read_chain(in));
    } catch (const ledger::ChainError& e) {
        throw CliError(kVerificationFailure, std::string("chain verification failed: ") + e.what());
    }
}

const ledger::ContractState& deployed_state(const ledger::Chain& chain) {
    if (!chain.replica().state()) fail("chain has no deployed contract (run `deploy` first)");
    return *chain.replica().state();
}

void append_block_line(const fs::path& path, const ledger::Block& block) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out || !(out << to_hex(block.encode()) << '\n') || !out.flush()) fail("cannot append to " + path.string());
}

// --- commands -----------------------------------------------------------------------

struct KeygenArgs {
    std::string role;
    std::string out;
    bool force = false;
};

int cmd_keygen(Context& ctx, const KeygenArgs& a) {
    const fs::path path = ctx.key_path(a.out);
    json j;
    if (a.role == "utility") {
        const auto pbs = credentials::UtilityKeyPair::generate(ctx.random());
        const auto owner = crypto::SigningKeyPair::generate(ctx.random());
        j = {{"role", "utility"},
             {"pbs_secret", to_hex(pbs.secret.view())},
             {"pbs_public", to_hex(pbs.public_key.view())},
             {"owner_secret", to_hex(owner.secret.view())},
             {"owner_public", to_hex(owner.public_key.view())},
             {"owner_address", owner.address().hex()}};
        write_text(path, j.dump(2) + "\n", a.force);
        ctx.out << "utility key written to " << path.string() << "\n"
                << "issuer public key: " << to_hex(pbs.public_key.view()) << "\n"
                << "owner address: " << owner.address().hex() << "\n";
    } else {
        const auto keys = crypto::SigningKeyPair::generate(ctx.random());
        j = {{"role", "esu"},
             {"secret", to_hex(keys.secret.view())},
             {"public", to_hex(keys.public_key.view())},
             {"address", keys.address().hex()}};
        write_text(path, j.dump(2) + "\n", a.force);
        ctx.out << "esu key written to " << path.string() << "\n"
                << "address: " << keys.address().hex() << "\n";
    }
    return kOk;
}

struct DeployArgs {
    std::string utility_key;
    std::string chain;
    std::string community;
    std::string date;
    std::int64_t capacity = 0;
    std::int64_t regular_load = 0;
    std::int32_t beta1 = 500;
    std::int32_t beta2 = 500;
    std::int64_t battery = 200;
    std::uint32_t period_days = 7;
};

int cmd_deploy(Context& ctx, const DeployArgs& a) {
    const auto keys = load_utility(ctx.key_path(a.utility_key));
    auto chain = load_chain(a.chain, false);
    if (chain.height() != 0) fail("chain " + a.chain + " already holds a contract");

    ledger::DeployPayload payload;
    payload.owner_pk = keys.owner.public_key;
    payload.utility_pk = keys.pbs.public_key;
    payload.capacity = a.capacity;
    payload.regular_load = a.regular_load;
    payload.community = a.community;
    payload.beta1 = a.beta1;
    payload.beta2 = a.beta2;
    payload.battery_capacity = a.battery;
    payload.period_days = a.period_days;
    payload.start_day = date_or_fail(a.date);
    try {
        ledger::deploy(payload);
    } catch (const scheduler::InvalidInput& e) {
        fail(std::string("deployment rejected: ") + e.what());
    }
    const auto& block = chain.append_block({ledger::Transaction::deploy(keys.owner, payload, ctx.random())});
    append_block_line(a.chain, block);
    ctx.out << "contract deployed at block " << block.height << ", headroom "
            << payload.capacity - payload.regular_load << " kW, community " << payload.community << "\n";
    return kOk;
}

struct IssueArgs {
    std::string utility_key;
    std::string identity_key;
    std::string date;
    std::string community;
    std::string out;
    std::uint32_t count = 1;
    std::uint32_t quota = 10;
    std::uint32_t period_days = 7;
    bool force = false;
};

fs::path issuer_log_path(const Context& ctx) { return ctx.key_path("issuer_log.json"); }

credentials::Issuer::QuotaLog load_quota_log(const fs::path& path) {
    credentials::Issuer::QuotaLog log;
    if (!fs::exists(path)) return log;
    const json j = read_json(path, "issuer log");
    try {
        for (const auto& e : j.at("issued")) {
            log[{Address::from_hex_string(e.at("identity").get<std::string>()), e.at("period").get<credentials::Day>()}] =
                e.at("count").get<std::uint32_t>();
        }
    } catch (const std::exception& e) {
        fail("cannot parse issuer log " + path.string() + ": " + e.what());
    }
    return log;
}

void save_quota_log(const fs::path& path, const credentials::Issuer::QuotaLog& log) {
    json entries = json::array();
    for (const auto& [key, count] : log) {
        entries.push_back({{"identity", key.first.hex()}, {"period", key.second}, {"count", count}});
    }
    write_text(path, json{{"issued", entries}}.dump(2) + "\n", true);
}

int cmd_issue(Context& ctx, const IssueArgs& a) {
    const auto utility = load_utility(ctx.key_path(a.utility_key));
    const auto identity = load_esu(ctx.key_path(a.identity_key));
    if (a.community.empty()) fail("community identifier must not be empty");
    if (a.period_days == 0) fail("--period-days must be at least 1");
    const fs::path out_path = ctx.key_path(a.out);
    if (!a.force && fs::exists(out_path)) fail(out_path.string() + " already exists (use --force to overwrite)");

    credentials::Issuer issuer(utility.pbs, {a.quota, a.period_days});
    issuer.register_identity(identity.public_key);
    const fs::path log_path = issuer_log_path(ctx);
    issuer.restore_quota_log(load_quota_log(log_path));

    const credentials::CommonMessage common{issuer.policy().period_start(date_or_fail(a.date)), a.community};
    const std::uint32_t already = issuer.issued(identity.address(), common.date);
    if (already + a.count > a.quota) {
        fail("token quota exceeded: quota is " + std::to_string(a.quota) + " per period, " + std::to_string(already) +
             " already issued, " + std::to_string(a.count) + " requested");
    }

    json tokens = json::array();
    for (std::uint32_t i = 0; i < a.count; ++i) {
        const auto cred = credentials::acquire_token(issuer, identity, common, ctx.random());
        tokens.push_back({{"address", cred.pseudonym.address.hex()},
                          {"pseudonym_secret", to_hex(cred.pseudonym.keys.secret.view())},
                          {"pseudonym_public", to_hex(cred.pseudonym.public_key().view())},
                          {"token", to_hex(cred.token.encode())}});
    }
    save_quota_log(log_path, issuer.quota_log());
    const json doc{{"community", common.community},
                   {"period_start", format_date(common.date)},
                   {"utility_public", to_hex(utility.pbs.public_key.view())},
                   {"tokens", tokens}};
    write_text(out_path, doc.dump(2) + "\n", true);
    ctx.out << a.count << " token(s) for community " << common.community << ", period starting "
            << format_date(common.date) << ", written to " << out_path.string() << "\n";
    return kOk;
}

struct SubmitArgs {
    std::string tokens;
    std::string chain;
    std::string date;
    std::size_t index = 0;
    std::int64_t power = 0;
    std::int32_t soc = 0;
    std::int32_t tcc = 1;
};

int cmd_submit(Context& ctx, const SubmitArgs& a) {
    const fs::path tokens_path = ctx.key_path(a.tokens);
    const json doc = read_json(tokens_path, "token file");
    json entry;
    try {
        entry = doc.at("tokens").at(a.index);
    } catch (const json::exception&) {
        fail("token file " + tokens_path.string() + " has no token at index " + std::to_string(a.index));
    }
    const auto pseudonym = credentials::PseudonymKeyPair::from_secret(scalar_field(entry, "pseudonym_secret", tokens_path));
    credentials::Token token;
    try {
        token = credentials::Token::decode(from_hex(field_or_fail<std::string>(entry, "token", tokens_path)));
    } catch (const DecodeError& e) {
        fail("cannot parse token in " + tokens_path.string() + ": " + e.what());
    }

    auto chain = load_chain(a.chain, true);
    const auto& state = deployed_state(chain);
    ledger::RequestPayload payload;
    payload.power = a.power;
    payload.soc = a.soc;
    payload.tcc = a.tcc;
    payload.ts = a.date.empty() ? state.current_day : date_or_fail(a.date);
    payload.community = token.common.community;
    payload.pseudonym_pk = pseudonym.public_key();
    payload.token = token;

    const auto& block =
        chain.append_block({ledger::Transaction::charging_request(pseudonym, payload, ctx.random())});
    append_block_line(a.chain, block);
    const auto& receipt = block.receipts.front();
    if (receipt.accepted) {
        ctx.out << "accepted: request from " << pseudonym.address.hex() << " at block " << block.height << "\n";
        return kOk;
    }
    ctx.out << "rejected (" << ledger::to_string(receipt.reason) << "): request from " << pseudonym.address.hex()
            << " at block " << block.height << "\n";
    return kValidationFailure;
}

struct PostLoadArgs {
    std::string utility_key;
    std::string chain;
    std::int64_t regular_load = 0;
};

int cmd_post_load(Context& ctx, const PostLoadArgs& a) {
    const auto keys = load_utility(ctx.key_path(a.utility_key));
    auto chain = load_chain(a.chain, true);
    deployed_state(chain);
    const auto& block =
        chain.append_block({ledger::Transaction::load_post(keys.owner, a.regular_load, ctx.random())});
    append_block_line(a.chain, block);
    const auto& receipt = block.receipts.front();
    if (!receipt.accepted) {
        ctx.out << "rejected (" << ledger::to_string(receipt.reason) << ") at block " << block.height << "\n";
        return kValidationFailure;
    }
    ctx.out << "regular load " << a.regular_load << " kW posted at block " << block.height << ", headroom "
            << chain.replica().state()->max_capacity << " kW\n";
    return kOk;
}

struct RunSlotArgs {
    std::string chain;
    std::string next_date;
};

int cmd_run_slot(Context& ctx, const RunSlotArgs& a) {
    auto chain = load_chain(a.chain, true);
    const auto before = deployed_state(chain);
    const credentials::Day next_day = a.next_date.empty() ? before.current_day : date_or_fail(a.next_date);
    if (next_day < before.current_day) fail("next slot date precedes the contract date");

    const auto& block = chain.append_block({ledger::Transaction::slot_trigger(before.current_slot, next_day)});
    append_block_line(a.chain, block);
    const auto& receipt = block.receipts.front();
    if (!receipt.accepted || !receipt.schedule) {
        ctx.out << "slot trigger rejected (" << ledger::to_string(receipt.reason) << ")\n";
        return kValidationFailure;
    }
    const auto& schedule = *receipt.schedule;
    ctx.out << "slot " << before.current_slot << " executed at block " << block.height << ": granted "
            << schedule.total_granted() << " of " << before.max_capacity << " kW to "
            << schedule.granted.size() << " ESU(s)\n";
    for (const auto& id : schedule.fully_scheduled) {
        ctx.out << "  full     " << id.hex() << " " << schedule.granted_to(id) << " kW\n";
    }
    for (const auto& id : schedule.deferred) {
        const auto requested = before.esu_records.at(id).power;
        if (schedule.partially_scheduled == id) {
            ctx.out << "  partial  " << id.hex() << " " << schedule.granted_to(id) << " of " << requested
                    << " kW, rest deferred\n";
        } else {
            ctx.out << "  deferred " << id.hex() << " 0 of " << requested << " kW\n";
        }
    }
    return kOk;
}

int cmd_verify(Context& ctx, const std::string& chain_path) {
    std::ifstream in(chain_path, std::ios::binary);
    if (!in) fail("cannot read " + chain_path);
    std::vector<ledger::Block> blocks;
    try {
        blocks = ledger::read_chain(in);
    } catch (const ledger::ChainError& e) {
        ctx.err << "verification failed: " << e.what() << "\n";
        return kVerificationFailure;
    }
    const auto check = ledger::check_chain(blocks);
    if (!check.ok) {
        ctx.err << "verification failed: " << check.reason << "\n";
        return kVerificationFailure;
    }
    if (ctx.verbosity > 0) {
        for (const auto& b : blocks) {
            ctx.out << "block " << b.height << " " << b.block_hash.hex() << " txs=" << b.txs.size()
                    << " state_root=" << b.state_root.hex() << "\n";
        }
    }
    ctx.out << "chain ok: " << blocks.size() << " block(s)\n";
    return kOk;
}

struct SimulateArgs {
    std::string config;
    std::string out;
};

int cmd_simulate(Context& ctx, const SimulateArgs& a) {
    harness::SimConfig config;
    if (!a.config.empty()) {
        try {
            config = read_json(a.config, "simulation config").get<harness::SimConfig>();
        } catch (const std::invalid_argument& e) {
            fail(std::string("invalid simulation config: ") + e.what());
        }
    }
    if (ctx.seed) config.seed = *ctx.seed;
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("invalid simulation config: ") + e.what());
    }
    const auto rows = harness::sweep_lambda(config);
    std::ostringstream csv;
    harness::write_csv(csv, rows);
    write_text(a.out, csv.str(), true);

    ctx.out << "lambda  scheduler  mean_index  stderr\n";
    for (const auto& r : rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%6g  %-9s  %.6f    %.6f\n", r.lambda, harness::to_string(r.policy),
                      r.mean_index, r.stderr_index);
        ctx.out << line;
    }
    ctx.out << rows.size() << " rows written to " << a.out << "\n";
    return kOk;
}

}  // namespace

std::optional<credentials::Day> parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    const std::string s(text);
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
    if (days < 0) return std::nullopt;
    return static_cast<credentials::Day>(days);
}

std::string format_date(credentials::Day day) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    crypto::init();
    Context ctx{out, err, {}, std::nullopt, 0, nullptr};

    CLI::App app{"Decentralized charging coordination: credentials, ledger and simulation"};
    app.require_subcommand(1);
    app.add_option("--keystore", ctx.keystore, "Key-store directory for key, token and issuer files")
        ->envname(kKeystoreEnv);
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Deterministic seed for key material and simulation");
    app.add_flag("-v,--verbose", ctx.verbosity, "More output");

    KeygenArgs keygen;
    auto* keygen_cmd = app.add_subcommand("keygen", "Generate a utility or ESU key pair");
    keygen_cmd->add_option("--role", keygen.role)->required()->check(CLI::IsMember({"utility", "esu"}));
    keygen_cmd->add_option("--out", keygen.out)->required();
    keygen_cmd->add_flag("--force", keygen.force, "Overwrite an existing key file");

    DeployArgs deploy;
    auto* deploy_cmd = app.add_subcommand("deploy", "Create a chain log holding the coordination contract");
    deploy_cmd->add_option("--utility-key", deploy.utility_key)->required();
    deploy_cmd->add_option("--chain", deploy.chain)->required();
    deploy_cmd->add_option("--capacity", deploy.capacity, "Bus capacity C in kW")->required();
    deploy_cmd->add_option("--regular-load", deploy.regular_load, "Regular load P_R in kW")->required();
    deploy_cmd->add_option("--community", deploy.community)->required();
    deploy_cmd->add_option("--date", deploy.date, "Contract start date YYYY-MM-DD")->required();
    deploy_cmd->add_option("--beta1", deploy.beta1, "Per-mille weight of (1 - SoC)");
    deploy_cmd->add_option("--beta2", deploy.beta2, "Per-mille weight of F(TCC)");
    deploy_cmd->add_option("--battery", deploy.battery, "Battery capacity in kW per slot");
    deploy_cmd->add_option("--period-days", deploy.period_days, "Token issuance period in days");

    IssueArgs issue;
    auto* issue_cmd = app.add_subcommand("issue", "Acquire anonymous tokens for fresh pseudonyms");
    issue_cmd->add_option("--utility-key", issue.utility_key)->required();
    issue_cmd->add_option("--identity-key", issue.identity_key)->required();
    issue_cmd->add_option("--count,-n", issue.count)->check(CLI::PositiveNumber);
    issue_cmd->add_option("--date", issue.date)->required();
    issue_cmd->add_option("--community", issue.community)->required();
    issue_cmd->add_option("--out", issue.out)->required();
    issue_cmd->add_option("--quota", issue.quota, "Tokens per identity per period");
    issue_cmd->add_option("--period-days", issue.period_days);
    issue_cmd->add_flag("--force", issue.force);

    SubmitArgs submit;
    auto* submit_cmd = app.add_subcommand("submit", "Submit a charging request under one token");
    submit_cmd->add_option("--tokens", submit.tokens)->required();
    submit_cmd->add_option("--index", submit.index, "Token index inside the token file");
    submit_cmd->add_option("--power", submit.power, "Requested power in kW")->required();
    submit_cmd->add_option("--soc", submit.soc, "State of charge, per-mille")->required();
    submit_cmd->add_option("--tcc", submit.tcc, "Slots until charge must complete")->required();
    submit_cmd->add_option("--date", submit.date, "Request date; defaults to the contract date");
    submit_cmd->add_option("--chain", submit.chain)->required();

    PostLoadArgs post_load;
    auto* post_cmd = app.add_subcommand("post-load", "Post the regular load for the upcoming slot");
    post_cmd->add_option("--utility-key", post_load.utility_key)->required();
    post_cmd->add_option("--regular-load", post_load.regular_load)->required();
    post_cmd->add_option("--chain", post_load.chain)->required();

    RunSlotArgs run_slot;
    auto* run_slot_cmd = app.add_subcommand("run-slot", "Trigger end-of-slot scheduling");
    run_slot_cmd->add_option("--chain", run_slot.chain)->required();
    run_slot_cmd->add_option("--next-date", run_slot.next_date, "Date of the following slot");

    std::string verify_chain_path;
    auto* verify_cmd = app.add_subcommand("verify", "Re-execute and check a chain log");
    verify_cmd->add_option("--chain", verify_chain_path)->required();

    SimulateArgs simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Charging-index sweep over request rates");
    simulate_cmd->add_option("--config", simulate.config, "JSON simulation config");
    simulate_cmd->add_option("--out", simulate.out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kValidationFailure;
    }
    if (*seed_opt) ctx.seed = seed;

    try {
        if (*keygen_cmd) return cmd_keygen(ctx, keygen);
        if (*deploy_cmd) return cmd_deploy(ctx, deploy);
        if (*issue_cmd) return cmd_issue(ctx, issue);
        if (*submit_cmd) return cmd_submit(ctx, submit);
        if (*post_cmd) return cmd_post_load(ctx, post_load);
        if (*run_slot_cmd) return cmd_run_slot(ctx, run_slot);
        if (*verify_cmd) return cmd_verify(ctx, verify_chain_path);
        if (*simulate_cmd) return cmd_simulate(ctx, simulate);
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
    return kValidationFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("chargechain");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    argv.push_back(nullptr);
    return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace chargechain::cli
