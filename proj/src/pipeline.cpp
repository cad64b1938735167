#include "salgraph/pipeline.hpp"

#include <stdexcept>

namespace salgraph {

ForegroundParams foregroundParams(const PipelineConfig& cfg) {
  ForegroundParams p;
  p.sweep = {cfg.etaMax, cfg.etaMin, cfg.etaSteps};
  return p;
}

PipelineResult runPipeline(const PipelineInputs& inputs, const PipelineConfig& cfg) {
  validate(cfg);
  requireValidInput(inputs.image);
  PipelineResult r;

  const LabImage lab = rgbToLab(inputs.image);
  r.superpixels = slicSegment(lab, {cfg.nSuperpixels, cfg.slicCompactness, cfg.slicIterations});
  const SuperpixelMap& sp = r.superpixels;
  const int n = sp.count();

  if (inputs.edges) {
    if (!inputs.edges->sameShape(inputs.image)) throw std::invalid_argument("edge map dimensions do not match the image");
    r.edges = *inputs.edges;
  } else {
    r.edges = computeEdgeMap(lab);
  }
  r.affinity = computeAffinity(sp, r.edges, cfg.sigmaW, cfg.beta, cfg.edgeWeights);
  const Matrix& A = r.affinity.A;

  r.divergence = divergence(A, sp);
  r.backgroundSeeds = cfg.seeds == SeedMode::Filtered ? selectBackgroundSeeds(r.divergence.div, sp)
                                                       : allBorderSeeds(sp);
  const SaliencyGraph bgGraph = buildGraph(sp, A, r.backgroundSeeds);
  r.backgroundGeodesic = geodesicToVirtual(bgGraph);
  r.conBp = minMaxNormalize(r.backgroundGeodesic);

  r.rare = rarity(A, r.affinity.dC, sp, cfg.phi);
  r.foreground = extractForeground(r.conBp, r.rare, A, sp, foregroundParams(cfg));
  const SaliencyGraph fgGraph = buildGraph(sp, A, r.foreground.asSeeds());
  r.foregroundGeodesic = geodesicToVirtual(fgGraph);
  r.conFp = NodeScores::Ones(n) - minMaxNormalize(r.foregroundGeodesic);

  r.sCom = integrate(r.conBp, r.conFp, cfg.kappa);

  std::optional<NodeScores> objectness;
  if (inputs.objectness) {
    if (!inputs.objectness->sameShape(inputs.image)) throw std::invalid_argument("objectness map dimensions do not match the image");
    objectness = superpixelMeans(*inputs.objectness, sp.labels, n);
  }

  const bool useClusters = cfg.refine == RefineMode::Full || cfg.refine == RefineMode::MidlevelOnly;
  const bool useGate = cfg.refine == RefineMode::Full || cfg.refine == RefineMode::GateOnly;
  r.clusters = midlevelClusters(sp, useClusters ? cfg.tauC : 0.0);
  r.gate = useGate ? gateNodes(r.sCom, objectness) : NodeGate::allActive(n);

  if (cfg.refine == RefineMode::None) {
    r.final = r.sCom;
  } else {
    const Matrix P = midlevelAffinity(sp, A, r.clusters);
    r.final = emrSolve(P, r.gate, r.sCom, cfg.mu, cfg.laplacian);
  }
  r.saliency = renderSaliency(r.final, sp.labels);
  return r;
}

}  // namespace salgraph
