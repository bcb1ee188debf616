#include "nftrec/cli.hpp"

#include "nftrec/error.hpp"
#include "nftrec/evaluate.hpp"
#include "nftrec/fetch.hpp"
#include "nftrec/index.hpp"
#include "nftrec/ingest.hpp"
#include "nftrec/recommend.hpp"
#include "nftrec/server.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ostream>

namespace nftrec::cli {

namespace {

using nlohmann::json;

struct Options {
    int verbosity = 0;

    std::string api_base;
    std::string contract;
    std::string out;
    int page_size = 50;
    double rate = 1.0;
    int max_retries = 5;
    std::string api_key;

    std::string input;
    std::string format;

    std::string collection;
    std::string scope = "local";

    std::string index;
    std::string ref;
    std::string model = "both";
    std::size_t k = kDefaultTopK;

    std::string host = "0.0.0.0";
    int port = 8080;
    std::string static_dir;
};

class Logger {
public:
    Logger(std::ostream& err, int verbosity) : err_(err), verbosity_(verbosity) {}
    void info(const std::string& msg) const {
        if (verbosity_ > 0) err_ << msg << '\n';
    }

private:
    std::ostream& err_;
    int verbosity_;
};

json stats_json(const MetricStats& s) {
    return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"stddev", s.stddev}};
}

int cmd_fetch(const Options& o, std::ostream& out, const Logger& log) {
    FetchConfig cfg;
    cfg.api_base = o.api_base;
    cfg.contract = o.contract;
    cfg.page_size = o.page_size;
    cfg.rate_limit = o.rate;
    cfg.max_retries = o.max_retries;
    if (!o.api_key.empty()) cfg.api_key = o.api_key;

    SnapshotStore store(o.out);
    HttplibTransport transport;
    SteadyClock clock;
    FetchStats stats;
    log.info("fetching " + cfg.page_url(0) + " ...");
    auto collection = fetch_assets(cfg, store, transport, clock, &stats);
    save_collection(collection, o.out);
    json summary = {{"tokens", collection.total_supply()},
                    {"pages", stats.pages},
                    {"requests", stats.requests},
                    {"backoffs", stats.backoffs},
                    {"out", o.out}};
    out << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_ingest(const Options& o, std::ostream& out, const Logger& log) {
    auto collection = load_collection(o.input, parse_input_format(o.format));
    log.info("loaded " + std::to_string(collection.total_supply()) + " tokens from " + o.input);
    save_collection(collection, o.out);
    out << json({{"tokens", collection.total_supply()}, {"out", o.out}}).dump(2) << '\n';
    return kExitOk;
}

int cmd_index(const Options& o, std::ostream& out, const Logger& log) {
    auto start = std::chrono::steady_clock::now();
    auto index = RecommenderIndex::build(load_collection_dir(o.collection), parse_scope(o.scope));
    index.save(o.out);
    auto report = rarity_report(index.collection(), index.scope());
    write_file(std::filesystem::path(o.out) / "rarity.csv", rarity_totals_csv(report));
    write_file(std::filesystem::path(o.out) / "rarity_traits.csv", rarity_traits_csv(report));
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log.info("indexed " + std::to_string(index.size()) + " tokens in " + std::to_string(secs) + " s");
    out << json({{"tokens", index.size()},
                 {"vocabulary_size", index.vocabulary().size()},
                 {"scope", std::string(to_string(index.scope()))},
                 {"out", o.out}})
               .dump(2)
        << '\n';
    return kExitOk;
}

int cmd_recommend(const Options& o, std::ostream& out) {
    auto model = parse_model_choice(o.model);
    auto ref = parse_token_ref(o.ref);
    auto index = RecommenderIndex::load(o.index);
    auto set = recommend(ref, model, o.k, index);
    if (o.format == "table") {
        out << recommendation_table(set);
    } else {
        out << recommendation_json(set) << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
    auto format = parse_frame_format(o.format);
    auto ref = parse_token_ref(o.ref);
    auto index = RecommenderIndex::load(o.index);
    auto frame = cross_evaluate(ref, o.k, index);
    export_frame(frame, format, o.out);

    json stats = json::object();
    for (const auto& [source, s] : summary_stats(frame)) {
        stats[std::string(to_string(source))] = {{"count", s.count},
                                                 {"cosine_to_reference", stats_json(s.cosine_to_reference)},
                                                 {"total_rarity", stats_json(s.total_rarity)}};
    }
    out << json({{"reference", ref.display()}, {"k", o.k}, {"rows", frame.rows.size()}, {"out", o.out},
                 {"summary", std::move(stats)}})
               .dump(2)
        << '\n';
    return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
    auto index = RecommenderIndex::load(o.index);
    std::optional<std::filesystem::path> static_dir;
    if (!o.static_dir.empty()) static_dir = o.static_dir;
    ApiServer server(index, static_dir);
    int port = server.bind(o.host, o.port);
    if (port < 0) {
        err << "error: cannot bind " << o.host << ":" << o.port << '\n';
        return kExitDomainError;
    }
    out << json({{"listening", o.host + ":" + std::to_string(port)}, {"tokens", index.size()}}).dump() << std::endl;
    return server.listen() ? kExitOk : kExitDomainError;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Trait-similarity and rarity-proximity recommendations for NFT collections", "recsys"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", o.verbosity, "Log progress to standard error");

    auto* fetch = app.add_subcommand("fetch", "Download a collection from an OpenSea-compatible assets API");
    fetch->add_option("--api-base", o.api_base, "API base URL, e.g. https://api.opensea.io/api/v1")->required();
    fetch->add_option("--contract", o.contract, "Collection contract address")->required();
    fetch->add_option("--out", o.out, "Output directory (snapshots, cursor, collection.json)")->required();
    fetch->add_option("--page-size", o.page_size, "Assets per page")->check(CLI::Range(1, 50))->capture_default_str();
    fetch->add_option("--rate", o.rate, "Requests per second")->check(CLI::PositiveNumber)->capture_default_str();
    fetch->add_option("--max-retries", o.max_retries, "Retries per page on 429 or network errors")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fetch->add_option("--api-key", o.api_key, "API key sent as X-API-KEY")->envname(kApiKeyEnv);

    auto* ingest = app.add_subcommand("ingest", "Load a collection from a local JSON file");
    ingest->add_option("--input", o.input, "Input JSON file")->required()->check(CLI::ExistingFile);
    ingest->add_option("--format", o.format, "Input format")
        ->required()
        ->check(CLI::IsMember({"opensea-assets", "erc721-metadata"}));
    ingest->add_option("--out", o.out, "Output collection directory")->required();

    auto* index = app.add_subcommand("index", "Build the on-disk recommendation index");
    index->add_option("--collection", o.collection, "Collection directory")->required()->check(CLI::ExistingDirectory);
    index->add_option("--out", o.out, "Index directory")->required();
    index->add_option("--scope", o.scope, "Trait-string scope")
        ->check(CLI::IsMember({"local", "cross"}))
        ->capture_default_str();

    auto* rec = app.add_subcommand("recommend", "Top-k recommendations for one token");
    rec->add_option("--index", o.index, "Index directory")->required()->check(CLI::ExistingDirectory);
    rec->add_option("--ref", o.ref, "Reference id <contract>-<token_id>")->required();
    rec->add_option("--model", o.model, "Model")->check(CLI::IsMember({"traits", "rarity", "both"}))->capture_default_str();
    rec->add_option("-k", o.k, "Number of recommendations")->capture_default_str();
    o.format = "json";
    rec->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    auto* eval = app.add_subcommand("evaluate", "Export both models' outputs on both metric axes");
    eval->add_option("--index", o.index, "Index directory")->required()->check(CLI::ExistingDirectory);
    eval->add_option("--ref", o.ref, "Reference id <contract>-<token_id>")->required();
    eval->add_option("-k", o.k, "Number of recommendations per model")->capture_default_str();
    eval->add_option("--out", o.out, "Output file")->required();
    eval->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto* serve = app.add_subcommand("serve", "Serve the read-only HTTP API");
    serve->add_option("--index", o.index, "Index directory")->required()->check(CLI::ExistingDirectory);
    serve->add_option("--port", o.port, "TCP port")->required()->check(CLI::Range(0, 65535));
    serve->add_option("--host", o.host, "Bind address")->capture_default_str();
    serve->add_option("--static", o.static_dir, "Directory of static UI assets")->check(CLI::ExistingDirectory);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    if (!argv.empty()) argv.pop_back();  // program name
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Logger log(err, o.verbosity);
    try {
        if (*fetch) return cmd_fetch(o, out, log);
        if (*ingest) return cmd_ingest(o, out, log);
        if (*index) return cmd_index(o, out, log);
        if (*rec) return cmd_recommend(o, out);
        if (*eval) {
            if (eval->count("--format") == 0) o.format = "csv";
            return cmd_evaluate(o, out);
        }
        if (*serve) return cmd_serve(o, out, err);
    } catch (const FetchError& e) {
        err << "error: " << e.what() << " (resume cursor: last_page " << e.last_page() << ")\n";
        return kExitDomainError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, out, err);
}

} // namespace nftrec::cli
