import os
import sys

core_dir = os.environ.get("TQ_CORE_DIR")
if core_dir:
    sys.path.insert(0, core_dir)
