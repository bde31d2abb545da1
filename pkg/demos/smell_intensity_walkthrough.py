"""
Smells and their intensity in one release
=========================================

Parse one release of the bundled fixture project, compute its metrics,
detect smells and score how badly each smelly class exceeds its thresholds.
"""

from pathlib import Path

from smellprone.detection import detect_smells
from smellprone.intensity import release_intensities
from smellprone.metrics import compute_release_metrics, parse_release

release = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "project" / "v1.1"
model = parse_release(release, "v1.1")
vectors = compute_release_metrics(model)
print(f"{len(vectors)} metric vectors (classes and methods)")

# Every smell records the predicates that fired, with actual and threshold.
smells = detect_smells(vectors)
for s in smells:
    fired = ", ".join(f"{p.metric}={p.actual:g} ({p.op} {p.threshold:g})"
                      for p in s.satisfied_predicates)
    print(f"{s.kind:18s} {s.entity}: {fired}")

# Intensity is 0 for clean classes and lands in [1, 10] otherwise.
intensity = release_intensities(vectors, smells)
for cls, ci in sorted(intensity.items(), key=lambda kv: -kv[1].value)[:6]:
    print(f"{ci.value:5.2f}  {cls}  {'/'.join(ci.kinds) or '-'}")
