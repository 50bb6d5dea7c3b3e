"""Cut cycle decompositions into equal paths, write them to disk and check them back.

    python3 demos/paths_and_files.py [outdir]
"""
import sys
import tempfile
from pathlib import Path

from hypercube_decomp import path_decomposition, plan_paths, read_decomposition, verify_decomposition, write_decomposition

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
for n, ell in ((6, 8), (10, 80), (14, 1024)):
    plan = plan_paths(n, ell)
    paths = path_decomposition(n, ell)
    target = out / f"q{n}_paths_{ell}.hcd"
    write_decomposition(target, n, "paths", paths)
    back = read_decomposition(target)
    print(f"Q_{n}: cycles of length {plan.length} cut into {paths.shape[0]} paths of length {ell}")
    print(f"   {target} ({target.stat().st_size} bytes):", verify_decomposition(n, back.pieces, kind="paths"))
