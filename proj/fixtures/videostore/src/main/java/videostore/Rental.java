package videostore;

public class Rental {
  private Movie movie;
  private int daysRented;

  public Rental(Movie movie, int daysRented) {
    if (daysRented <= 0) {
      throw new IllegalArgumentException("days rented must be positive");
    }
    if (movie == null) {
      this.movie = new RegularMovie("unknown");
    } else {
      this.movie = movie;
    }
    this.daysRented = daysRented;
  }

  public Movie getMovie() {
    if (this.movie == null) {
      return new RegularMovie("unknown");
    }
    return this.movie;
  }

  public int getDaysRented() {
    return this.daysRented;
  }
}
