"""grograde: graded algebras, partial actions and partial groupoid cohomology over finite structures."""
