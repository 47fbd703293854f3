def test(verbose=True, slow=False):
    r"""Run the stlppc test-suite through pytest, module doctests included.

    Parameters
    ----------
    verbose : bool
        ``False`` passes ``--quiet`` to pytest. Defaults to ``True``.
    slow : bool
        Also run the tests marked ``slow`` (multi-seed closed-loop runs).
        Defaults to ``False``.

    Returns
    -------
    int
        pytest exit code, ``0`` when every test passed.
    """
    import pytest

    args = ["--doctest-modules", "--doctest-plus", "--pyargs", "stlppc"]
    if not slow:
        args = ["-m", "not slow"] + args
    if not verbose:
        args = ["--quiet"] + args
    return pytest.main(args)
