// Batch command-line front end for the meshtrack library.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 domain invariant violation.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshtrack/meshtrack.hpp"

namespace {

using namespace meshtrack;

std::string lowercase_ext(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

int cmd_subdivide(const std::string& topology_path, const std::string& mesh_path,
                  int levels, const std::string& out_path) {
    auto topology = std::make_shared<MeshTopology>(load_topology_file(topology_path));
    ObjData obj = load_obj_file(mesh_path);
    SurfaceMesh mesh = make_surface_mesh(topology, std::move(obj.vertices));
    SurfaceMesh result = catmull_clark_subdivide(mesh, levels);
    save_obj_file(out_path, result);
    return 0;
}

int cmd_track(const std::string& trace_path, const std::string& config_path,
              const std::string& out_path, bool report) {
    const std::vector<TraceRecord> records = read_trace_file(trace_path);
    const PipelineConfig config = load_pipeline_config(config_path);
    auto [out, stats] = run_trace_tracking(records, config);
    write_trace_file(out_path, out);
    if (report) {
        std::printf("frames: %lld\n", static_cast<long long>(stats.frames));
        std::printf("predictions: %lld\n", static_cast<long long>(stats.predictions));
        std::printf("detector calls: %lld\n", static_cast<long long>(stats.detector_calls));
        std::printf("re-acquisitions:");
        if (stats.reacquisition_frames.empty()) {
            std::printf(" none");
        } else {
            for (std::int64_t f : stats.reacquisition_frames)
                std::printf(" %lld", static_cast<long long>(f));
        }
        std::printf("\n");
        std::printf("throughput: %.1f frames/s, %.1f landmark-updates/s\n",
                    stats.frames_per_s(), stats.landmark_updates_per_s());
    }
    return 0;
}

int cmd_filter(const std::string& trace_path, const std::string& config_path,
               const std::string& out_path) {
    const std::vector<TraceRecord> records = read_trace_file(trace_path);
    const PipelineConfig config = load_pipeline_config(config_path);
    FilterBank bank(config.filter_params);
    std::vector<TraceRecord> out;
    out.reserve(records.size());
    for (const TraceRecord& record : records) {
        const Landmarks points = record_landmarks(record);
        const double face_scale = iod_3d(points, config.eye_spec);
        const Landmarks filtered =
            bank.filter_frame(points, record.timestamp_s, face_scale);
        out.push_back(make_trace_record(record.frame_index, record.timestamp_s,
                                        record.face_flag, filtered));
    }
    write_trace_file(out_path, out);
    return 0;
}

// A mesh argument is either an OBJ (single frame) or a trace (one or more).
std::vector<Landmarks> load_frames(const std::string& path) {
    if (lowercase_ext(path) == ".obj") {
        ObjData obj = load_obj_file(path);
        if (obj.vertices.empty()) throw ParseError("'" + path + "' has no vertices");
        return {std::move(obj.vertices)};
    }
    std::vector<Landmarks> frames;
    for (const TraceRecord& record : read_trace_file(path))
        frames.push_back(record_landmarks(record));
    if (frames.empty()) throw ParseError("'" + path + "' has no records");
    return frames;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path,
             const std::vector<std::string>& annotation_paths,
             const std::string& config_path) {
    const PipelineConfig config = load_pipeline_config(config_path);
    double result;
    if (!annotation_paths.empty()) {
        std::vector<Landmarks> annotations;
        for (const std::string& path : annotation_paths)
            annotations.push_back(load_frames(path).front());
        result = inter_annotator_mad(annotations, config.eye_spec);
    } else {
        const std::vector<Landmarks> pred = load_frames(pred_path);
        const std::vector<Landmarks> gt = load_frames(gt_path);
        if (pred.size() != gt.size())
            throw DomainError("prediction and ground truth frame counts differ");
        double sum = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            sum += iod_mad_2d(pred[i], gt[i], config.eye_spec);
        result = sum / static_cast<double>(pred.size());
    }
    std::printf("%.4f%%\n", result);
    return 0;
}

int cmd_brush(const std::string& mesh_path, const std::string& strokes_path,
              const std::string& out_path, bool frozen) {
    SurfaceMesh mesh = load_obj_mesh_file(mesh_path);
    auto in = open_input(strokes_path);
    const std::vector<BrushStroke> strokes = read_strokes(in);
    const SurfaceMesh initial = mesh;
    for (const BrushStroke& stroke : strokes) {
        if (frozen) {
            mesh = apply_brush(mesh, stroke, geodesic_distances(initial, stroke.pivot));
        } else {
            mesh = apply_brush(mesh, stroke);
        }
    }
    save_obj_file(out_path, mesh);
    return 0;
}

struct SynthOptions {
    std::string out;
    std::string gt_out;
    std::string config_out;
    std::string obj_out;
    std::string topology_out;
    std::string kind = "grid";
    std::string mesh_file;
    std::vector<long long> eye_corners;
    int frames = 0;
    double fps = 30.0;
    int rows = 12;
    int cols = 12;
    double spacing = 10.0;
    double tx = 0.0, ty = 0.0, tz = 0.0;
    double spin = 0.0;
    double scale_growth = 1.0;
    double noise_sigma = 0.0;
    double z_aspect = 0.5;
    std::uint64_t seed = 0;
    std::vector<long long> flag_drops;
};

int cmd_synth(const SynthOptions& opt) {
    CanonicalMesh canonical = [&]() -> CanonicalMesh {
        if (opt.kind == "grid") return make_grid_mesh(opt.rows, opt.cols, opt.spacing);
        if (opt.kind == "ellipsoid")
            return make_ellipsoid_patch(opt.cols, opt.rows, opt.z_aspect);
        if (opt.kind == "file") {
            if (opt.mesh_file.empty() || opt.eye_corners.size() != 4)
                throw ParseError(
                    "--kind file requires --mesh-file and --eye-corners (4 indices)");
            EyeCornerSpec spec;
            spec.left_outer = static_cast<VertexIndex>(opt.eye_corners[0]);
            spec.left_inner = static_cast<VertexIndex>(opt.eye_corners[1]);
            spec.right_inner = static_cast<VertexIndex>(opt.eye_corners[2]);
            spec.right_outer = static_cast<VertexIndex>(opt.eye_corners[3]);
            return load_canonical_mesh(opt.mesh_file, spec);
        }
        throw ParseError("unknown topology kind '" + opt.kind + "'");
    }();

    const MotionScript script = linear_motion_script(
        opt.frames, opt.fps, {opt.tx, opt.ty, opt.tz}, opt.spin, opt.scale_growth);
    HarnessConfig harness;
    harness.noise_sigma = opt.noise_sigma;
    harness.seed = opt.seed;
    harness.z_aspect = opt.z_aspect;
    for (long long frame : opt.flag_drops) harness.flag_script[frame] = 0.0;

    const FrameSequence sequence = generate_sequence(canonical, script, harness);
    write_trace_file(opt.out, sequence_to_trace(sequence));
    if (!opt.gt_out.empty())
        write_trace_file(opt.gt_out, sequence_to_trace(sequence, /*ground_truth=*/true));
    if (!opt.config_out.empty()) {
        PipelineConfig config;
        config.z_aspect = opt.z_aspect;
        config.eye_spec = canonical.eye_spec;
        auto out = open_output(opt.config_out);
        write_pipeline_config(out, config);
    }
    if (!opt.obj_out.empty()) save_obj_file(opt.obj_out, canonical.mesh);
    if (!opt.topology_out.empty()) {
        auto out = open_output(opt.topology_out);
        save_topology(out, *canonical.mesh.topology);
    }
    return 0;
}

int cmd_bench(long long frames, std::size_t landmarks, int streams) {
    const BenchResult result = run_pipeline_benchmark(frames, landmarks, streams);
    for (std::size_t i = 0; i < result.streams.size(); ++i)
        std::printf("stream %zu: %.1f frames/s, %.1f landmark-updates/s\n", i,
                    result.streams[i].frames_per_s,
                    result.streams[i].landmark_updates_per_s);
    std::printf("aggregate: %.1f frames/s, %.1f landmark-updates/s\n",
                result.aggregate_frames_per_s, result.aggregate_landmark_updates_per_s);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Face-mesh tracking toolkit"};
    app.require_subcommand(1);

    // subdivide
    std::string topology_path, mesh_path, out_path;
    int levels = 0;
    auto* subdivide = app.add_subcommand("subdivide", "Catmull-Clark subdivision of a quad mesh");
    subdivide->add_option("--topology", topology_path, "topology file")->required();
    subdivide->add_option("--mesh", mesh_path, "OBJ with vertex positions")->required();
    subdivide->add_option("--levels", levels, "subdivision levels")->required();
    subdivide->add_option("--out", out_path, "output OBJ")->required();

    // track
    std::string trace_path, config_path;
    bool report = false;
    auto* track = app.add_subcommand("track", "run the tracking pipeline over a trace");
    track->add_option("--trace", trace_path, "input trace")->required();
    track->add_option("--config", config_path, "pipeline config")->required();
    track->add_option("--out", out_path, "output trace")->required();
    track->add_flag("--report", report, "print run statistics");

    // filter
    auto* filter = app.add_subcommand("filter", "apply the temporal filter to a trace");
    filter->add_option("--trace", trace_path, "input trace")->required();
    filter->add_option("--config", config_path, "pipeline config")->required();
    filter->add_option("--out", out_path, "output trace")->required();

    // eval
    std::string pred_path, gt_path;
    std::vector<std::string> annotation_paths;
    auto* eval = app.add_subcommand("eval", "IOD-normalized mean absolute distance");
    eval->add_option("--pred", pred_path, "predicted mesh/trace");
    eval->add_option("--gt", gt_path, "ground-truth mesh/trace");
    eval->add_option("--annotation", annotation_paths,
                     "annotation mesh (repeat 2+ times for the inter-annotator baseline)");
    eval->add_option("--config", config_path, "pipeline config (eye corners)")->required();

    // brush
    std::string strokes_path;
    bool frozen = false;
    auto* brush = app.add_subcommand("brush", "apply annotation brush strokes to an OBJ");
    brush->add_option("--mesh", mesh_path, "input OBJ (quad faces)")->required();
    brush->add_option("--strokes", strokes_path, "stroke file")->required();
    brush->add_option("--out", out_path, "output OBJ")->required();
    brush->add_flag("--frozen-geodesics", frozen,
                    "measure all strokes on the initial mesh");

    // synth
    SynthOptions synth_opt;
    auto* synth = app.add_subcommand("synth", "generate a synthetic landmark trace");
    synth->add_option("--out", synth_opt.out, "output trace (noisy)")->required();
    synth->add_option("--frames", synth_opt.frames, "frame count")->required();
    synth->add_option("--fps", synth_opt.fps, "frame rate");
    synth->add_option("--kind", synth_opt.kind, "grid | ellipsoid | file");
    synth->add_option("--rows", synth_opt.rows, "grid/patch rows");
    synth->add_option("--cols", synth_opt.cols, "grid/patch cols");
    synth->add_option("--spacing", synth_opt.spacing, "grid spacing in px");
    synth->add_option("--mesh-file", synth_opt.mesh_file, "OBJ for --kind file");
    synth->add_option("--eye-corners", synth_opt.eye_corners,
                      "left-outer left-inner right-inner right-outer (for --kind file)")
        ->expected(4);
    synth->add_option("--tx", synth_opt.tx, "x translation per frame, px");
    synth->add_option("--ty", synth_opt.ty, "y translation per frame, px");
    synth->add_option("--tz", synth_opt.tz, "z translation per frame, px");
    synth->add_option("--spin", synth_opt.spin, "in-plane rotation per frame, rad");
    synth->add_option("--scale-growth", synth_opt.scale_growth, "scale factor per frame");
    synth->add_option("--noise-sigma", synth_opt.noise_sigma, "Gaussian noise sigma, px");
    synth->add_option("--z-aspect", synth_opt.z_aspect, "z-span : x-span ratio");
    synth->add_option("--seed", synth_opt.seed, "noise seed");
    synth->add_option("--flag-drop", synth_opt.flag_drops,
                      "frame where the face flag is forced to 0 (repeatable)");
    synth->add_option("--gt-out", synth_opt.gt_out, "also write the ground-truth trace");
    synth->add_option("--config-out", synth_opt.config_out,
                      "write a matching pipeline config");
    synth->add_option("--obj-out", synth_opt.obj_out, "write the canonical mesh as OBJ");
    synth->add_option("--topology-out", synth_opt.topology_out,
                      "write the canonical topology file");

    // bench
    long long bench_frames = 10000;
    std::size_t bench_landmarks = 468;
    int bench_streams = 1;
    auto* bench = app.add_subcommand("bench", "pipeline throughput (predictor excluded)");
    bench->add_option("--frames", bench_frames, "frames per stream");
    bench->add_option("--landmarks", bench_landmarks, "landmarks per frame");
    bench->add_option("--streams", bench_streams, "parallel independent streams");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (subdivide->parsed())
            return cmd_subdivide(topology_path, mesh_path, levels, out_path);
        if (track->parsed()) return cmd_track(trace_path, config_path, out_path, report);
        if (filter->parsed()) return cmd_filter(trace_path, config_path, out_path);
        if (eval->parsed()) {
            if (annotation_paths.empty() && (pred_path.empty() || gt_path.empty()))
                throw ParseError("eval needs --pred and --gt, or 2+ --annotation files");
            if (!annotation_paths.empty() && annotation_paths.size() < 2)
                throw ParseError("inter-annotator baseline needs 2+ --annotation files");
            return cmd_eval(pred_path, gt_path, annotation_paths, config_path);
        }
        if (brush->parsed()) return cmd_brush(mesh_path, strokes_path, out_path, frozen);
        if (synth->parsed()) return cmd_synth(synth_opt);
        if (bench->parsed()) return cmd_bench(bench_frames, bench_landmarks, bench_streams);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
