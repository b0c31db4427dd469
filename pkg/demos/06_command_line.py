"""Driving the command-line tool from Python and reading its CSV output.

The same calls work from a shell as ``clbattery sweep ...``.
"""

import tempfile
from pathlib import Path

from clbattery.cli import main, read_sweep_csv

out_dir = Path(tempfile.mkdtemp(prefix="clbattery-demo-"))
csv_path = out_dir / "gamma_sweep.csv"

main(["point", "--gamma", "3.8", "--temp", "0.1"])
main(["sweep", "--parameter", "gamma", "--from", "0.1", "--to", "20", "--points", "60",
      "--temp", "0.1", "--out", str(csv_path)])

meta, header, rows = read_sweep_csv(csv_path)
print("\nmetadata:", meta)
eta = rows[:, header.index("eta")]
print(f"peak eta {eta.max():.4f} at gamma {rows[eta.argmax(), 0]:.3f}")

main(["reproduce", "fig2", "--out-dir", str(out_dir)])
