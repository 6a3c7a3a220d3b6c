"""Operations on Coxeter data, roots and limit points."""
