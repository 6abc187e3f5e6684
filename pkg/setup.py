from setuptools import setup

setup(
    name="qforge",
    version="0.1.0",
    description="Aljabar komputer eksak untuk matriks R grup kuantum umum",
    py_modules=[
        "main", "config", "errors", "shared_state", "worker", "scalars", "freealg",
        "linalg", "qdiff", "quotient", "algebra", "rmatrix", "yangbaxter",
        "deformation", "hopf", "specfile", "reports",
    ],
    install_requires=["python-dotenv", "numpy", "sympy>=1.13"],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["qforge=main:main"]},
    python_requires=">=3.9",
)
