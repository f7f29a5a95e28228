from .generate_benchmark_data import SynthSpec, benchmark_function, generate, validate_synth_spec
