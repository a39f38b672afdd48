#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "commands_impl.hpp"
#include "estf/error.hpp"
#include "estf/random.hpp"

namespace estf::cli {

namespace fs = std::filesystem;

namespace {

struct Job {
    fs::path input;
    std::string rel;  // normalized, '/'-separated; hashed into the seed
    io::Format in_format;
    io::Format out_format;
    fs::path output;
};

struct JobResult {
    bool ok = false;
    std::string error;
    std::size_t n_in = 0, n_out = 0;
    AugmentDraws draws;
};

std::string_view extension_for(io::Format f) {
    switch (f) {
        case io::Format::Csv: return ".csv";
        case io::Format::Evt1: return ".evt1";
        case io::Format::AtisBin: return ".bin";
    }
    return "";
}

bool inside(const fs::path& path, const fs::path& dir) {
    const auto p = fs::weakly_canonical(path), d = fs::weakly_canonical(dir);
    auto [end, _] = std::mismatch(d.begin(), d.end(), p.begin(), p.end());
    return end == d.end();
}

std::vector<Job> plan(const AugmentFlags& f) {
    std::optional<io::Format> out_format;
    if (!f.out_format.empty()) out_format = require_format(f.out_format);
    if (!f.in_format.empty()) require_format(f.in_format);

    std::vector<Job> jobs;
    auto add = [&](const fs::path& file, std::string rel) {
        Job job;
        job.input = file;
        job.rel = std::move(rel);
        job.in_format = resolve_format(f.in_format, file.string());
        job.out_format = out_format.value_or(job.in_format);
        fs::path target = fs::path(f.output) / fs::path(job.rel);
        if (out_format) target.replace_extension(extension_for(*out_format));
        job.output = target;
        jobs.push_back(std::move(job));
    };

    for (const auto& arg : f.inputs) {
        const fs::path in(arg);
        std::error_code ec;
        const auto status = fs::status(in, ec);
        if (ec || !fs::exists(status)) throw ConfigError("input not found: " + arg);
        if (fs::is_directory(status)) {
            std::vector<std::pair<std::string, fs::path>> found;
            for (const auto& entry : fs::recursive_directory_iterator(in)) {
                if (!entry.is_regular_file()) continue;
                if (!io::format_for_path(entry.path().string())) continue;
                if (fs::exists(f.output) && inside(entry.path(), f.output)) continue;
                found.emplace_back(entry.path().lexically_relative(in).lexically_normal().generic_string(), entry.path());
            }
            std::sort(found.begin(), found.end());
            for (auto& [rel, path] : found) add(path, rel);
        } else {
            add(in, in.filename().generic_string());
        }
    }

    std::map<std::string, const Job*> seen;
    for (const Job& job : jobs) {
        const auto key = job.output.lexically_normal().generic_string();
        auto [it, fresh] = seen.emplace(key, &job);
        if (!fresh) {
            throw ConfigError("inputs " + it->second->input.string() + " and " + job.input.string() +
                              " would both write " + key);
        }
        if (fs::exists(job.output) && fs::equivalent(job.output, job.input)) {
            throw ConfigError("output would overwrite input " + job.input.string());
        }
    }
    return jobs;
}

}  // namespace

void add_augment_flags(CLI::App& app, AugmentFlags& f) {
    app.add_option("inputs", f.inputs, "event files or directories (searched recursively)")->required();
    app.add_option("-o,--output", f.output, "output directory")->required();
    app.add_option("--op", f.op.op, "none, estf, istp, dst, drop, flip, translate")->required();
    add_op_flags(app, f.op);
    app.add_option("--seed", f.seed, "base seed; each file uses seed ^ fnv1a64(relative path)");
    app.add_option("-j,--workers", f.workers, "files processed concurrently")->check(CLI::PositiveNumber);
    app.add_option("--in-format", f.in_format, "csv, evt1, atis (default: from extension)");
    app.add_option("--out-format", f.out_format, "csv, evt1, atis (default: same as input)");
    add_geometry_flags(app, f.geometry);
}

int cmd_augment(const AugmentFlags& f, std::ostream& out, std::ostream& err) {
    const AugmentSpec spec = build_spec(f.op);
    const io::ReadOptions read = read_options(f.geometry);
    const std::vector<Job> jobs = plan(f);

    try {
        fs::create_directories(f.output);
        for (const Job& job : jobs) fs::create_directories(job.output.parent_path());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFileError;
    }

    std::vector<JobResult> results(jobs.size());
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(f.workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Job& job = jobs[static_cast<std::size_t>(i)];
        JobResult& r = results[static_cast<std::size_t>(i)];
        try {
            const EventStream stream = io::read(job.input.string(), job.in_format, read);
            auto outcome = apply(stream, spec, f.seed ^ fnv1a64(job.rel));
            io::write(outcome.stream, job.output.string(), job.out_format);
            r.n_in = stream.size();
            r.n_out = outcome.stream.size();
            r.draws = outcome.draws;
            r.ok = true;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }

    const fs::path manifest_path = fs::path(f.output) / "manifest.jsonl";
    std::ofstream manifest(manifest_path, std::ios::binary | std::ios::trunc);
    if (!manifest) {
        err << "error: cannot write " << manifest_path.string() << "\n";
        return kExitFileError;
    }
    int status = kExitOk;
    std::size_t done = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& job = jobs[i];
        const JobResult& r = results[i];
        if (!r.ok) {
            err << "error: " << job.input.string() << ": " << r.error << "\n";
            status = kExitFileError;
            continue;
        }
        auto params = spec_params(spec);
        params["seed"] = f.seed ^ fnv1a64(job.rel);
        const nlohmann::ordered_json line = {
            {"input", job.input.generic_string()}, {"output", job.output.generic_string()},
            {"op", to_string(spec.op)},            {"params", params},
            {"draws", draws_json(r.draws)},        {"n_in", r.n_in},
            {"n_out", r.n_out},
        };
        manifest << line.dump() << "\n";
        ++done;
    }
    out << "augmented " << done << " of " << jobs.size() << " files into " << f.output << "\n";
    return status;
}

}  // namespace estf::cli
