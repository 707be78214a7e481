package videostore;

public abstract class Movie {
  private String title;

  public Movie(String title) {
    if (title == null) {
      throw new IllegalArgumentException("title must not be null");
    }
    this.title = title;
  }

  public String getTitle() {
    return this.title;
  }

  public double determineAmount(int daysRented) {
    return 0.0;
  }

  public int determineFrequentRenterPoints(int daysRented) {
    return 1;
  }
}
