from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repro")
