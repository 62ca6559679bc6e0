/* Copyright 2026 The skelimg Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Writes a small synthetic dataset (canonical CSVs plus manifest.json) for
// demos and end-to-end tests.
#include <iostream>

#include "CLI11.hpp"
#include "skelimg/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic landmark dataset", "skelimg_synth"};
  skelimg::SynthConfig cfg;
  std::string out;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--classes", cfg.classes);
  app.add_option("--signers", cfg.signers);
  app.add_option("--samples", cfg.samples_per_class, "Samples per class and signer");
  app.add_option("--frames", cfg.frames);
  app.add_option("--noise", cfg.noise);
  app.add_option("--dropout", cfg.dropout, "Fraction of hand detections removed");
  app.add_option("--seed", cfg.seed);
  CLI11_PARSE(app, argc, argv);
  try {
    const auto manifest = skelimg::WriteSynthDataset(cfg, out);
    std::cout << "wrote " << manifest.entries.size() << " sequences to " << out << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
