import hypothesis

# Property tests exercise quadrature and big-rational paths whose runtime
# varies a lot between examples; wall-clock deadlines would only add noise.
hypothesis.settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    derandomize=True,
)
hypothesis.settings.load_profile("default")
