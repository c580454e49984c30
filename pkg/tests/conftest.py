import os

# keep BLAS single-threaded: the suite parallelizes across processes where
# it matters, and small eigenproblems run faster without thread fan-out
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_var, "1")
