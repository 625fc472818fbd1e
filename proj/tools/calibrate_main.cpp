// Builds the reference model from the published anchor targets and writes it
// to a model JSON file, printing the anchor residual report along the way.
//
// The anchor set is mutually inconsistent (see README), so the calibration
// solves nine of the ten targets exactly and reports the remaining residual
// honestly; the tool still exits 0 once the model file is written, because
// producing the best-fit reference model is its job. Use `railrisk validate`
// to turn anchor misses into a nonzero exit.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "railrisk/buckets.hpp"
#include "railrisk/error.hpp"
#include "railrisk/model_io.hpp"
#include "railrisk/rail_model.hpp"
#include "railrisk/reference.hpp"

int main(int argc, char** argv) {
  CLI::App app{"build and save the calibrated reference model"};
  std::string out_path;
  app.add_option("--out", out_path, "output model JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace railrisk;
  try {
    RailBreakModel model = calibrate_reference();
    AnchorReport report = check_anchors(model);

    std::cout << "calibration anchor report:\n";
    for (const auto& check : report.checks) {
      std::printf("  %-4s %-30s actual %-12.6g target %g +/- %g (residual %.3g)\n",
                  check.pass ? "PASS" : "FAIL", check.spec.name.c_str(), check.actual,
                  check.spec.target, check.spec.tolerance, check.actual - check.spec.target);
    }
    if (!report.all_pass) {
      std::cout << "note: the anchor targets cannot all hold at once; the misses above are\n"
                   "the residual of the closest constructible model, not a calibration bug.\n";
    }

    ModelProvenance provenance;
    provenance.source = "calibration";
    provenance.fit_mode = "calibrated";
    provenance.alpha = 0.0;
    provenance.schedule = std::nullopt;
    provenance.bucket_maps = BucketMaps::defaults();

    ModelDocument doc = ModelDocument::from_net(model.net(), provenance);
    save_model(doc, out_path);
    std::cout << "saved reference model to '" << out_path << "'\n";
    return 0;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
